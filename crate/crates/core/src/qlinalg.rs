//! Quaternion scalars, vectors and matrices.
//!
//! The multiplication table is fixed to `i·j = −k` (so `j·k = −i`,
//! `k·i = −j`, and `i·j·k = +1`). Everything downstream, in particular the
//! complexification `q = a + j·b`, assumes this convention.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Real part.
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part as a pure quaternion.
    pub fn im(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn inverse(self) -> Self {
        self.conj().scale(1.0 / self.norm_sqr())
    }

    /// Splits `q = a + j·b` into the complex pair `(a, b)`.
    ///
    /// With `i·j = −k` one has `j·(y + z·i) = y·j + z·k`, hence
    /// `a = w + x·i` and `b = y + z·i`.
    pub fn to_complex_pair(self) -> (Complex64, Complex64) {
        (Complex64::new(self.w, self.x), Complex64::new(self.y, self.z))
    }

    pub fn from_complex_pair(a: Complex64, b: Complex64) -> Self {
        Self::new(a.re, a.im, b.re, b.im)
    }

    /// Components drawn uniformly from `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        )
    }

    pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let q = Self::random(rng);
            let n = q.norm();
            if n > 1e-3 && n <= 1.0 {
                return q.scale(1.0 / n);
            }
        }
    }
}

impl Mul for Quaternion {
    type Output = Self;

    /// `(a, u)(b, v) = (ab − u·v, a v + b u − u×v)`; the minus sign on the
    /// cross product realises `i·j = −k`.
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self, rhs);
        Self::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + b.w * a.x - (a.y * b.z - a.z * b.y),
            a.w * b.y + b.w * a.y - (a.z * b.x - a.x * b.z),
            a.w * b.z + b.w * a.z - (a.x * b.y - a.y * b.x),
        )
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    a * b
}

/// A column vector in `ℍⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QVector(pub Vec<Quaternion>);

impl QVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![Quaternion::ZERO; n])
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Quaternion::ONE;
        v
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self((0..n).map(|_| Quaternion::random(rng)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Right scalar multiplication `Z·q`.
    pub fn right_mul(&self, q: Quaternion) -> Self {
        Self(self.0.iter().map(|&z| z * q).collect())
    }

    /// Left scalar multiplication `q·Z`.
    pub fn left_mul(&self, q: Quaternion) -> Self {
        Self(self.0.iter().map(|&z| q * z).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.iter().map(|&z| z.scale(s)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect())
    }
}

impl Index<usize> for QVector {
    type Output = Quaternion;
    fn index(&self, i: usize) -> &Quaternion {
        &self.0[i]
    }
}

/// `Z̄·W = Σ conj(Zᵢ)·Wᵢ`.
pub fn qdot(z: &QVector, w: &QVector) -> Result<Quaternion> {
    if z.len() != w.len() {
        return Err(Error::LengthMismatch {
            expected: z.len(),
            actual: w.len(),
        });
    }
    Ok(z.0
        .iter()
        .zip(&w.0)
        .fold(Quaternion::ZERO, |acc, (&a, &b)| acc + a.conj() * b))
}

/// Stacks `Z = z′ + j·z″` as the complex vector `(z′; z″)` of length `2n`.
///
/// Under this map right multiplication by `i` becomes multiplication by the
/// complex unit and right multiplication by `j` becomes `Z ↦ J₂ₙ·conj(Z)`.
pub fn complexify(z: &QVector) -> Vec<Complex64> {
    let n = z.len();
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (i, q) in z.0.iter().enumerate() {
        let (a, b) = q.to_complex_pair();
        out[i] = a;
        out[n + i] = b;
    }
    out
}

pub fn decomplexify(v: &[Complex64]) -> QVector {
    let n = v.len() / 2;
    QVector(
        (0..n)
            .map(|i| Quaternion::from_complex_pair(v[i], v[n + i]))
            .collect(),
    )
}

/// Dense quaternion matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[Quaternion]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &q) in diag.iter().enumerate() {
            m[(i, i)] = q;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Quaternion) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Quaternion::ZERO;
                for k in 0..self.cols {
                    acc += self[(r, k)] * rhs[(k, c)];
                }
                out[(r, c)] = acc;
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &QVector) -> Result<QVector> {
        if self.cols != v.len() {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok(QVector(
            (0..self.rows)
                .map(|r| (0..self.cols).fold(Quaternion::ZERO, |acc, c| acc + self[(r, c)] * v[c]))
                .collect(),
        ))
    }

    /// Real part of the trace.
    pub fn re_trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].w).sum()
    }

    /// Largest entry magnitude of `M†M − I`.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self
            .adjoint()
            .matmul(self)
            .expect("adjoint has matching inner dimension");
        let mut worst: f64 = 0.0;
        for r in 0..gram.rows {
            for c in 0..gram.cols {
                let target = if r == c { Quaternion::ONE } else { Quaternion::ZERO };
                worst = worst.max((gram[(r, c)] - target).norm());
            }
        }
        worst
    }

    /// The `2n×2n` complex matrix of `Z ↦ M·Z` in the coordinates of
    /// [`complexify`]. Writing `M = A + j·B` entrywise this is
    /// `[[A, −conj(B)], [B, conj(A)]]`.
    pub fn to_complex(&self) -> DMatrix<Complex64> {
        let (n, m) = (self.rows, self.cols);
        let mut out = DMatrix::from_element(2 * n, 2 * m, Complex64::new(0.0, 0.0));
        for r in 0..n {
            for c in 0..m {
                let (a, b) = self[(r, c)].to_complex_pair();
                out[(r, c)] = a;
                out[(r, m + c)] = -b.conj();
                out[(n + r, c)] = b;
                out[(n + r, m + c)] = a.conj();
            }
        }
        out
    }

    /// A Givens rotation by a real angle in the `(p, q)` coordinate plane.
    pub fn rotation(n: usize, p: usize, q: usize, angle: f64) -> Self {
        let mut m = Self::identity(n);
        let (s, c) = angle.sin_cos();
        m[(p, p)] = Quaternion::real(c);
        m[(q, q)] = Quaternion::real(c);
        m[(p, q)] = Quaternion::real(-s);
        m[(q, p)] = Quaternion::real(s);
        m
    }

    /// Random element of `Sp(n)` built as a product of elementary
    /// symplectic-unitary factors: unit-quaternion diagonals and real plane
    /// rotations.
    pub fn random_symplectic<R: Rng + ?Sized>(n: usize, factors: usize, rng: &mut R) -> Self {
        let mut m = Self::identity(n);
        for _ in 0..factors {
            let diag: Vec<_> = (0..n).map(|_| Quaternion::random_unit(rng)).collect();
            m = Self::from_diagonal(&diag).matmul(&m).expect("square");
            if n > 1 {
                let p = rng.gen_range(0..n);
                let mut q = rng.gen_range(0..n - 1);
                if q >= p {
                    q += 1;
                }
                let angle = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                m = Self::rotation(n, p, q, angle).matmul(&m).expect("square");
            }
        }
        m
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        &mut self.data[r * self.cols + c]
    }
}

/// True iff `M` is square and `max |M†M − I| ≤ tol`.
pub fn is_symplectic(m: &QMatrix, tol: f64) -> bool {
    m.is_square() && m.unitarity_defect() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    #[test]
    fn multiplication_table() {
        assert_eq!(I * J, -K);
        assert_eq!(J * K, -I);
        assert_eq!(K * I, -J);
        assert_eq!(J * I, K);
        assert_eq!(I * I, Quaternion::real(-1.0));
        assert_eq!(J * J, Quaternion::real(-1.0));
        assert_eq!(K * K, Quaternion::real(-1.0));
        assert_eq!(I * J * K, Quaternion::ONE);
    }

    #[test]
    fn identity_element() {
        let q = Quaternion::new(0.3, -1.2, 2.5, 0.7);
        assert_eq!(Quaternion::ONE * q, q);
        assert_eq!(q * Quaternion::ONE, q);
    }

    #[test]
    fn norm_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let a = Quaternion::random(&mut rng);
            let b = Quaternion::random(&mut rng);
            assert!(((a * b).norm() - a.norm() * b.norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn qdot_basics() {
        let e1 = QVector::unit(3, 0);
        let e2 = QVector::unit(3, 1);
        assert_eq!(qdot(&e1, &e1).unwrap(), Quaternion::ONE);
        assert_eq!(qdot(&e1, &e2).unwrap(), Quaternion::ZERO);
        assert!(matches!(
            qdot(&e1, &QVector::zeros(2)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn qdot_self_is_real() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let z = QVector::random(4, &mut rng);
            let d = qdot(&z, &z).unwrap();
            assert!(d.im().norm() < 1e-14);
            assert!((d.w - z.norm_sqr()).abs() < 1e-13);
        }
    }

    #[test]
    fn symplectic_predicate() {
        assert!(is_symplectic(&QMatrix::identity(3), 1e-12));
        assert!(is_symplectic(
            &QMatrix::from_diagonal(&[J, Quaternion::ONE, Quaternion::ONE]),
            1e-12
        ));
        let two = QMatrix::from_diagonal(&[Quaternion::real(2.0); 3]);
        assert!(!is_symplectic(&two, 1e-12));
        assert!(!is_symplectic(&QMatrix::zeros(2, 3), 1e-12));
    }

    #[test]
    fn symplectic_closed_under_products_and_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let a = QMatrix::random_symplectic(3, 4, &mut rng);
            let b = QMatrix::random_symplectic(3, 4, &mut rng);
            assert!(is_symplectic(&a, 1e-12));
            assert!(is_symplectic(&a.matmul(&b).unwrap(), 1e-12));
            // M⁻¹ = M† on Sp(n)
            let inv = a.adjoint();
            assert!(is_symplectic(&inv, 1e-12));
            let prod = a.matmul(&inv).unwrap();
            assert!(prod.unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn complexify_units() {
        let e1 = QVector::unit(1, 0);
        assert_eq!(
            complexify(&e1),
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
        );
        let je1 = e1.left_mul(J);
        assert_eq!(
            complexify(&je1),
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]
        );
    }

    fn j2n_conj(v: &[Complex64]) -> Vec<Complex64> {
        let n = v.len() / 2;
        (0..2 * n)
            .map(|r| if r < n { -v[n + r].conj() } else { v[r - n].conj() })
            .collect()
    }

    #[test]
    fn complexify_intertwines_right_units() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..200 {
            let z = QVector::random(3, &mut rng);
            let c = complexify(&z);
            let ci = complexify(&z.right_mul(I));
            for (a, b) in ci.iter().zip(&c) {
                assert!((a - b * Complex64::i()).norm() < 1e-14);
            }
            let cj = complexify(&z.right_mul(J));
            for (a, b) in cj.iter().zip(j2n_conj(&c)) {
                assert!((a - b).norm() < 1e-14);
            }
            assert_eq!(decomplexify(&c), z);
        }
    }

    #[test]
    fn complex_matrix_matches_left_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let m = QMatrix::from_fn(3, 3, |_, _| Quaternion::random(&mut rng.clone()));
        let m = m.matmul(&QMatrix::random_symplectic(3, 2, &mut rng)).unwrap();
        let z = QVector::random(3, &mut rng);
        let lhs = complexify(&m.apply(&z).unwrap());
        let cz = nalgebra::DVector::from_vec(complexify(&z));
        let rhs = m.to_complex() * cz;
        for (a, b) in lhs.iter().zip(rhs.iter()) {
            assert!((a - b).norm() < 1e-13);
        }
    }
}
