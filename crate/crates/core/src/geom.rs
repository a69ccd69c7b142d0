//! Metric identities on `ℍⁿ_*` and the matrix relations characterising
//! `O*(4n) = U(2n,2n) ∩ O(4n, ℂ)`.
//!
//! Only the inclusion `U(2n) ⊆ U(4n) ∩ O*(4n)` is checked by machine; the
//! reverse inclusion is a classification statement and is not tested here.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::qlinalg::{qdot, QMatrix, QVector, Quaternion};

/// Default tolerance on the max-entry deviation of the `O*(4n)` relations.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

/// A point `Z ∈ ℍⁿ_*` together with a tangent vector `W` at it.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentSample {
    base: QVector,
    vector: QVector,
}

impl TangentSample {
    pub fn new(base: QVector, vector: QVector) -> Result<Self> {
        if base.len() != vector.len() {
            return Err(Error::LengthMismatch {
                expected: base.len(),
                actual: vector.len(),
            });
        }
        if base.norm_sqr() == 0.0 {
            return Err(Error::ZeroBase);
        }
        Ok(Self { base, vector })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let base = QVector::random(n, rng);
            if base.norm() > 1e-3 {
                return Self {
                    base,
                    vector: QVector::random(n, rng),
                };
            }
        }
    }

    pub fn base(&self) -> &QVector {
        &self.base
    }

    pub fn vector(&self) -> &QVector {
        &self.vector
    }
}

/// `ds²_FS(W, W) = |W|²/|Z|² − |Z̄·W|²/|Z|⁴`.
pub fn fubini_study_form(s: &TangentSample) -> f64 {
    let z2 = s.base.norm_sqr();
    let zw = qdot(&s.base, &s.vector).expect("lengths checked at construction");
    s.vector.norm_sqr() / z2 - zw.norm_sqr() / (z2 * z2)
}

/// `| |W|² − [dρ² + ρ²·ds²_FS + |Im(Z̄·W)|²/|Z|²] |` with `dρ = Re(Z̄·W)/|Z|`.
pub fn metric_identity_residual(s: &TangentSample) -> f64 {
    let z2 = s.base.norm_sqr();
    let zw = qdot(&s.base, &s.vector).expect("lengths checked at construction");
    let radial = zw.re() * zw.re() / z2;
    let horizontal = z2 * fubini_study_form(s);
    let vertical = zw.im().norm_sqr() / z2;
    (s.vector.norm_sqr() - (radial + horizontal + vertical)).abs()
}

/// Builds the horizontal tangent vectors `u = [[0, −a†], [a, 0]]` and
/// `v = [[0, −b†], [b, 0]]` at the identity of `Sp(n)` and their images
/// `ũ = (0; a)`, `ṽ = (0; b)` at `(1, 0, …, 0) ∈ S⁴ⁿ⁻¹`, and returns
/// `(⟨u, v⟩_Sp(n), ⟨ũ, ṽ⟩_S⁴ⁿ⁻¹)` with `⟨X, Y⟩ = Re tr(X†Y)`.
pub fn quotient_factor_check(a: &QVector, b: &QVector) -> Result<(f64, f64)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    let n = a.len() + 1;
    let generator = |x: &QVector| {
        QMatrix::from_fn(n, n, |r, c| match (r, c) {
            (0, c) if c > 0 => -x[c - 1].conj(),
            (r, 0) if r > 0 => x[r - 1],
            _ => Quaternion::ZERO,
        })
    };
    let (u, v) = (generator(a), generator(b));
    let group = u.adjoint().matmul(&v)?.re_trace();

    let lift = |x: &QVector| {
        let mut out = QVector::zeros(n);
        out.0[1..].copy_from_slice(&x.0);
        out
    };
    let sphere = qdot(&lift(a), &lift(b))?.re();
    Ok((group, sphere))
}

/// Square complex matrix with 64-bit components.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(pub DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn identity(order: usize) -> Self {
        Self(DMatrix::identity(order, order))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = DMatrix::from_element(diag.len(), diag.len(), Complex64::new(0.0, 0.0));
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        Self(m)
    }

    pub fn order(&self) -> usize {
        self.0.nrows()
    }

    pub fn is_square(&self) -> bool {
        self.0.nrows() == self.0.ncols()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self(&self.0 * &rhs.0)
    }

    /// Max-entry magnitude of `M†M − I`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.order();
        max_abs_diff(&(self.0.adjoint() * &self.0), &DMatrix::identity(n, n))
    }

    /// Random unitary of the given order: QR of a matrix with entries
    /// uniform in the unit square, with the phases of `R`'s diagonal folded
    /// back into `Q`.
    pub fn random_unitary<R: Rng + ?Sized>(order: usize, rng: &mut R) -> Self {
        let m = DMatrix::from_fn(order, order, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let qr = m.qr();
        let mut q = qr.q();
        let r = qr.r();
        for c in 0..order {
            let d = r[(c, c)];
            let phase = if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            for row in 0..order {
                q[(row, c)] *= phase;
            }
        }
        Self(q)
    }
}

fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `J₂ₙ = [[0, −Iₙ], [Iₙ, 0]]`.
pub fn j2n(n: usize) -> DMatrix<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        if r < n && c == r + n {
            -one
        } else if r >= n && c + n == r {
            one
        } else {
            zero()
        }
    })
}

fn block_diag(a: &DMatrix<Complex64>, d: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (p, q) = (a.nrows(), d.nrows());
    let mut out = DMatrix::from_element(p + q, p + q, zero());
    out.view_mut((0, 0), (p, p)).copy_from(a);
    out.view_mut((p, p), (q, q)).copy_from(d);
    out
}

/// `diag(I₂ₙ, −I₂ₙ)`, the `U(2n, 2n)` form.
pub fn indefinite_form(n: usize) -> DMatrix<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    DMatrix::from_fn(4 * n, 4 * n, |r, c| match (r == c, r < 2 * n) {
        (true, true) => one,
        (true, false) => -one,
        _ => zero(),
    })
}

/// `[[0, J₂ₙ], [−J₂ₙ, 0]]`, the symmetric form preserved by `O(4n, ℂ)`.
pub fn orthogonal_form(n: usize) -> DMatrix<Complex64> {
    let j = j2n(n);
    let mut out = DMatrix::from_element(4 * n, 4 * n, zero());
    out.view_mut((0, 2 * n), (2 * n, 2 * n)).copy_from(&j);
    out.view_mut((2 * n, 0), (2 * n, 2 * n)).copy_from(&(-j));
    out
}

/// Deviations `(U(2n,2n) relation, O(4n,ℂ) relation)` of `g` as max-entry
/// magnitudes.
pub fn ostar_defects(g: &ComplexMatrix) -> Result<(f64, f64)> {
    let order = g.0.nrows();
    if !g.is_square() || !order.is_multiple_of(4) || order == 0 {
        return Err(Error::WrongOrder {
            expected: 4 * (order / 4).max(1),
            rows: g.0.nrows(),
            cols: g.0.ncols(),
        });
    }
    let n = order / 4;
    let eta = indefinite_form(n);
    let omega = orthogonal_form(n);
    let g = &g.0;
    let unitary = max_abs_diff(&(g.adjoint() * &eta * g), &eta);
    let orthogonal = max_abs_diff(&(g.transpose() * &omega * g), &omega);
    Ok((unitary, orthogonal))
}

/// True iff `g†·diag(I, −I)·g = diag(I, −I)` and
/// `gᵀ·[[0, J], [−J, 0]]·g = [[0, J], [−J, 0]]` to `tol`.
pub fn ostar_membership(g: &ComplexMatrix, tol: f64) -> Result<bool> {
    let (u, o) = ostar_defects(g)?;
    Ok(u <= tol && o <= tol)
}

fn check_unitary(a: &ComplexMatrix, tol: f64) -> Result<usize> {
    let order = a.0.nrows();
    if !a.is_square() || !order.is_multiple_of(2) || order == 0 {
        return Err(Error::WrongOrder {
            expected: 2 * (order / 2).max(1),
            rows: a.0.nrows(),
            cols: a.0.ncols(),
        });
    }
    let deviation = a.unitarity_defect();
    if deviation > tol {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(order / 2)
}

/// `A ↦ diag(A, −J₂ₙ·conj(A)·J₂ₙ)`, the image of `U(2n)` in `O*(4n)`.
pub fn embed_u2n(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = check_unitary(a, MEMBERSHIP_TOL)?;
    let j = j2n(n);
    let lower = -(&j * a.0.map(|z| z.conj()) * &j);
    Ok(ComplexMatrix(block_diag(&a.0, &lower)))
}

/// `A ↦ diag(A, −J₂ₙ·A·J₂ₙ)`, the same subgroup seen inside `U(4n)`.
///
/// This is the form in which the diagonal unit `Eᵢᵢ` of `u(2n)` maps to
/// `Eᵢᵢ + E_īī` with `ī = weight_double(i)`.
pub fn embed_u4n(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = check_unitary(a, MEMBERSHIP_TOL)?;
    let j = j2n(n);
    let lower = -(&j * &a.0 * &j);
    Ok(ComplexMatrix(block_diag(&a.0, &lower)))
}

/// The unique `ī ∈ {2n+1, …, 4n}` with `|ī − i − 2n| = n` (1-based).
pub fn weight_double(i: usize, n: usize) -> Result<usize> {
    if n == 0 || i == 0 || i > 2 * n {
        return Err(Error::IndexOutOfRange { index: i, max: 2 * n });
    }
    let candidates = [i + n, i + 3 * n];
    let hits: Vec<usize> = candidates
        .into_iter()
        .filter(|&c| c > 2 * n && c <= 4 * n)
        .collect();
    debug_assert_eq!(hits.len(), 1);
    Ok(hits[0])
}

/// Complexifies `M ∈ Sp(n)`, embeds it via [`embed_u2n`] and tests
/// `O*(4n)` membership.
pub fn sp_n_in_ostar(m: &QMatrix, tol: f64) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::WrongOrder {
            expected: m.rows(),
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let deviation = m.unitarity_defect();
    if deviation > MEMBERSHIP_TOL {
        return Err(Error::NotSymplectic { deviation });
    }
    let c = ComplexMatrix(m.to_complex());
    ostar_membership(&embed_u2n(&c)?, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample(z: QVector, w: QVector) -> TangentSample {
        TangentSample::new(z, w).unwrap()
    }

    #[test]
    fn fubini_study_examples() {
        let e1 = QVector::unit(3, 0);
        let e2 = QVector::unit(3, 1);
        assert_eq!(fubini_study_form(&sample(e1.clone(), e1.clone())), 0.0);
        assert_eq!(fubini_study_form(&sample(e1.clone(), e2.clone())), 1.0);
        // Z̄·W = i, so |W|² − |Z̄·W|² = 1 − 1
        let w = e1.right_mul(Quaternion::I);
        assert_eq!(fubini_study_form(&sample(e1.clone(), w)), 0.0);
    }

    #[test]
    fn metric_residual_examples() {
        let e1 = QVector::unit(2, 0);
        let e2 = QVector::unit(2, 1);
        assert_eq!(metric_identity_residual(&sample(e1.clone(), e2)), 0.0);
        assert_eq!(metric_identity_residual(&sample(e1.clone(), e1)), 0.0);
    }

    #[test]
    fn zero_base_rejected() {
        assert_eq!(
            TangentSample::new(QVector::zeros(2), QVector::unit(2, 0)),
            Err(Error::ZeroBase)
        );
        assert!(matches!(
            TangentSample::new(QVector::unit(2, 0), QVector::unit(3, 0)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn fubini_study_vanishes_on_vertical_directions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let z = QVector::random(3, &mut rng);
            let q = Quaternion::random(&mut rng);
            let s = sample(z.clone(), z.right_mul(q));
            assert!(fubini_study_form(&s).abs() < 1e-13);
        }
    }

    #[test]
    fn quotient_factor_examples() {
        let e1 = QVector::unit(2, 0);
        let e2 = QVector::unit(2, 1);
        assert_eq!(quotient_factor_check(&e1, &e1).unwrap(), (2.0, 1.0));
        assert_eq!(quotient_factor_check(&e1, &e2).unwrap(), (0.0, 0.0));
        assert!(quotient_factor_check(&e1, &QVector::unit(3, 0)).is_err());
    }

    #[test]
    fn quotient_generators_are_tangent_to_sp_n() {
        // u† = −u: the generators lie in sp(n).
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = QVector::random(3, &mut rng);
        let (x, y) = quotient_factor_check(&a, &a).unwrap();
        assert!((x - 2.0 * a.norm_sqr()).abs() < 1e-13);
        assert!((y - a.norm_sqr()).abs() < 1e-13);
    }

    #[test]
    fn ostar_examples() {
        assert!(ostar_membership(&ComplexMatrix::identity(8), MEMBERSHIP_TOL).unwrap());
        let mut diag = vec![Complex64::new(1.0, 0.0); 8];
        diag[0] = Complex64::new(2.0, 0.0);
        assert!(!ostar_membership(&ComplexMatrix::from_diagonal(&diag), MEMBERSHIP_TOL).unwrap());
        assert!(matches!(
            ostar_membership(&ComplexMatrix::identity(6), MEMBERSHIP_TOL),
            Err(Error::WrongOrder { .. })
        ));
    }

    #[test]
    fn j2n_block_form() {
        let j = j2n(2);
        assert_eq!(j[(0, 2)], Complex64::new(-1.0, 0.0));
        assert_eq!(j[(2, 0)], Complex64::new(1.0, 0.0));
        let sq = &j * &j;
        assert_eq!(sq, -DMatrix::<Complex64>::identity(4, 4));
    }

    #[test]
    fn embed_identity_and_rejects_non_unitary() {
        assert_eq!(
            embed_u2n(&ComplexMatrix::identity(4)).unwrap(),
            ComplexMatrix::identity(8)
        );
        let mut diag = vec![Complex64::new(1.0, 0.0); 4];
        diag[1] = Complex64::new(1.5, 0.0);
        assert!(matches!(
            embed_u2n(&ComplexMatrix::from_diagonal(&diag)),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn embed_phase_entries() {
        // A = diag(e^{iθ}, 1, 1, 1), n = 2: the lower block of the O* form
        // carries e^{−iθ} at local slot n+1, the U(4n) form carries e^{iθ}.
        let theta = 0.7;
        let phase = Complex64::from_polar(1.0, theta);
        let mut diag = vec![Complex64::new(1.0, 0.0); 4];
        diag[0] = phase;
        let a = ComplexMatrix::from_diagonal(&diag);
        let o = embed_u2n(&a).unwrap();
        let u = embed_u4n(&a).unwrap();
        let bar = weight_double(1, 2).unwrap() - 1;
        assert_eq!(bar, 6);
        for k in 0..8 {
            let expect_o = match k {
                0 => phase,
                6 => phase.conj(),
                _ => Complex64::new(1.0, 0.0),
            };
            let expect_u = if k == 0 || k == 6 {
                phase
            } else {
                Complex64::new(1.0, 0.0)
            };
            assert!((o.0[(k, k)] - expect_o).norm() < 1e-15);
            assert!((u.0[(k, k)] - expect_u).norm() < 1e-15);
        }
    }

    #[test]
    fn weight_double_examples() {
        assert_eq!(weight_double(1, 2).unwrap(), 7);
        assert_eq!(weight_double(3, 2).unwrap(), 5);
        assert!(weight_double(0, 2).is_err());
        assert!(weight_double(5, 2).is_err());
    }

    #[test]
    fn sp_n_examples() {
        assert!(sp_n_in_ostar(&QMatrix::identity(2), MEMBERSHIP_TOL).unwrap());
        let m = QMatrix::from_diagonal(&[Quaternion::J, Quaternion::ONE]);
        assert!(sp_n_in_ostar(&m, MEMBERSHIP_TOL).unwrap());
        let bad = QMatrix::from_diagonal(&[Quaternion::real(2.0), Quaternion::ONE]);
        assert!(matches!(
            sp_n_in_ostar(&bad, MEMBERSHIP_TOL),
            Err(Error::NotSymplectic { .. })
        ));
    }

    #[test]
    fn sp_n_complexification_commutes_with_quaternionic_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = QMatrix::random_symplectic(3, 5, &mut rng);
        let c = m.to_complex();
        let j = j2n(3);
        let lhs = &c * &j;
        let rhs = &j * c.map(|z| z.conj());
        assert!(max_abs_diff(&lhs, &rhs) < 1e-13);
        assert!(ComplexMatrix(c).unitarity_defect() < 1e-12);
    }

    #[test]
    fn embedding_is_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for n in 2..=3 {
            let a = ComplexMatrix::random_unitary(2 * n, &mut rng);
            let b = ComplexMatrix::random_unitary(2 * n, &mut rng);
            let lhs = embed_u2n(&a.mul(&b)).unwrap();
            let rhs = embed_u2n(&a).unwrap().mul(&embed_u2n(&b).unwrap());
            assert!(max_abs_diff(&lhs.0, &rhs.0) < 1e-12);
            assert!(lhs.unitarity_defect() < 1e-12);
        }
    }
}
