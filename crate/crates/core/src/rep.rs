//! Exact representation-theoretic data: Weyl dimensions and Casimir values
//! for root systems of type `A` and `C`, the closed-form dimension of
//! `𝓡_l(σ)`, and `Sp(1)` characters.
//!
//! Weights are stored doubled so that half-integral entries stay exact.
//! Casimir values use the orthonormal `eᵢ` basis, in which the long roots
//! `2eᵢ` of `C_m` have squared length 4. With that normalisation the
//! angular eigenvalue on `ℍP^{n−1}` is exactly twice the difference of
//! Casimir values (see [`angular_eigenvalue`]); if that identity ever
//! failed the normalisation, not the data, would be at fault.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
}

impl RootSystem {
    pub fn a(rank: usize) -> Self {
        Self {
            family: Family::A,
            rank,
        }
    }

    pub fn c(rank: usize) -> Self {
        Self {
            family: Family::C,
            rank,
        }
    }

    /// Number of `eᵢ` coordinates: `rank + 1` for `A`, `rank` for `C`.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::C => self.rank,
        }
    }

    /// Positive roots in `eᵢ` coordinates.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let d = self.ambient_dim();
        let unit = |i: usize| {
            let mut v = vec![0i64; d];
            v[i] = 1;
            v
        };
        let mut roots = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let (ei, ej) = (unit(i), unit(j));
                roots.push(ei.iter().zip(&ej).map(|(a, b)| a - b).collect());
                if self.family == Family::C {
                    roots.push(ei.iter().zip(&ej).map(|(a, b)| a + b).collect());
                }
            }
            if self.family == Family::C {
                roots.push(unit(i).iter().map(|a| 2 * a).collect());
            }
        }
        roots
    }

    /// `2ρ`, the sum of the positive roots.
    pub fn rho_doubled(&self) -> Vec<i64> {
        let mut rho = vec![0i64; self.ambient_dim()];
        for root in self.positive_roots() {
            for (r, a) in rho.iter_mut().zip(root) {
                *r += a;
            }
        }
        rho
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.family {
            Family::A => "A",
            Family::C => "C",
        };
        write!(f, "{letter}{}", self.rank)
    }
}

/// An integral or half-integral weight, stored as twice its entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HighestWeight {
    doubled: Vec<i64>,
}

impl HighestWeight {
    pub fn from_integers(entries: &[i64]) -> Self {
        Self {
            doubled: entries.iter().map(|e| 2 * e).collect(),
        }
    }

    pub fn from_doubled(doubled: Vec<i64>) -> Self {
        Self { doubled }
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn len(&self) -> usize {
        self.doubled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doubled.is_empty()
    }

    /// Entries as integers, if all of them are.
    pub fn integers(&self) -> Option<Vec<i64>> {
        self.doubled
            .iter()
            .map(|&d| (d % 2 == 0).then_some(d / 2))
            .collect()
    }

    pub fn entries(&self) -> Vec<BigRational> {
        self.doubled
            .iter()
            .map(|&d| BigRational::new(BigInt::from(d), BigInt::from(2)))
            .collect()
    }

    /// Adds `c·(1, …, 1)`, where `c` is given doubled.
    pub fn shifted_doubled(&self, c_doubled: i64) -> Self {
        Self::from_doubled(self.doubled.iter().map(|d| d + c_doubled).collect())
    }

    /// Reverses and negates: the highest weight of the dual module.
    pub fn dual(&self) -> Self {
        Self::from_doubled(self.doubled.iter().rev().map(|d| -d).collect())
    }

    pub fn is_non_increasing(&self) -> bool {
        self.doubled.windows(2).all(|w| w[0] >= w[1])
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.doubled.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if d % 2 == 0 {
                write!(f, "{}", d / 2)?;
            } else {
                write!(f, "{d}/2")?;
            }
        }
        write!(f, ")")
    }
}

fn validate(rs: &RootSystem, hw: &HighestWeight) -> Result<()> {
    if hw.len() != rs.ambient_dim() {
        return Err(Error::LengthMismatch {
            expected: rs.ambient_dim(),
            actual: hw.len(),
        });
    }
    let dominant =
        hw.is_non_increasing() && (rs.family == Family::A || hw.doubled.last().is_none_or(|&d| d >= 0));
    if !dominant {
        return Err(Error::NonDominant {
            weight: hw.to_string(),
            root_system: rs.to_string(),
        });
    }
    let integral = match rs.family {
        Family::C => hw.doubled.iter().all(|d| d % 2 == 0),
        // only differences λᵢ − λⱼ need be integral
        Family::A => hw.doubled.windows(2).all(|w| (w[0] - w[1]) % 2 == 0),
    };
    if !integral {
        return Err(Error::NonIntegral {
            weight: hw.to_string(),
            root_system: rs.to_string(),
        });
    }
    Ok(())
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `∏_{α>0} ⟨λ+ρ, α⟩ / ⟨ρ, α⟩`, exactly.
pub fn weyl_dim(rs: &RootSystem, hw: &HighestWeight) -> Result<BigUint> {
    validate(rs, hw)?;
    let rho2 = rs.rho_doubled();
    let shifted: Vec<i64> = hw.doubled.iter().zip(&rho2).map(|(l, r)| l + r).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for root in rs.positive_roots() {
        num *= dot(&shifted, &root);
        den *= dot(&rho2, &root);
    }
    let q = BigRational::new(num, den);
    debug_assert!(q.is_integer() && q.is_positive());
    Ok(q.to_integer()
        .to_biguint()
        .expect("Weyl dimension of a dominant weight is positive"))
}

/// `⟨λ, λ + 2ρ⟩` in the orthonormal `eᵢ` coordinates.
pub fn casimir(rs: &RootSystem, hw: &HighestWeight) -> Result<BigRational> {
    validate(rs, hw)?;
    let rho2 = rs.rho_doubled();
    // ⟨2λ, 2λ + 4ρ⟩ / 4
    let num: i64 = hw.doubled.iter().zip(&rho2).map(|(l, r)| l * (l + 2 * r)).sum();
    Ok(BigRational::new(BigInt::from(num), BigInt::from(4)))
}

/// `C(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Closed-form `dim 𝓡_l(σ)` for the `Sp(n)` module of highest weight
/// `(l+σ̄, l, 0, …, 0)`:
/// `((1+p−q)/(1+p))·(1+(p+q)/(2n−1))·C(p+2n−2, p)·C(q+2n−3, q)` with
/// `p = l+σ̄`, `q = l`.
pub fn dim_r_l(n: u32, sigma_bar: u32, l: u32) -> BigUint {
    assert!(n >= 2, "n must be at least 2");
    let (n, p, q) = (n as i64, (l + sigma_bar) as i64, l as i64);
    let factor = rational(1 + p - q, 1 + p) * (BigRational::one() + rational(p + q, 2 * n - 1));
    let binomials = binomial((p + 2 * n - 2) as u64, p as u64) * binomial((q + 2 * n - 3) as u64, q as u64);
    let value = factor * BigRational::from_integer(BigInt::from(binomials));
    debug_assert!(value.is_integer());
    value.to_integer().to_biguint().expect("dimension is positive")
}

/// `(l+σ̄, l, 0, …, 0)` as a `C_n` weight.
pub fn r_l_weight(n: u32, sigma_bar: u32, l: u32) -> HighestWeight {
    let mut entries = vec![0i64; n as usize];
    entries[0] = (l + sigma_bar) as i64;
    if n >= 2 {
        entries[1] = l as i64;
    }
    HighestWeight::from_integers(&entries)
}

/// Eigenvalue of the (non-negative) twisted Laplacian of `ℍP^{n−1}` on
/// `𝓡_l(σ)`: `4ℓ² + 4(2n−1)ℓ − σ̄(σ̄+2)` with `ℓ = l + σ̄/2`.
pub fn angular_eigenvalue(n: u32, sigma_bar: u32, l: u32) -> BigRational {
    let ell = rational(2 * l as i64 + sigma_bar as i64, 2);
    let four = rational(4, 1);
    let s = sigma_bar as i64;
    &four * &ell * &ell + &four * rational(2 * n as i64 - 1, 1) * &ell - rational(s * (s + 2), 1)
}

/// `2·(c₂[Sp(n)] on 𝓡_l(σ) − c₂[Sp(1)] on σ)`.
pub fn casimir_difference_doubled(n: u32, sigma_bar: u32, l: u32) -> BigRational {
    let big = casimir(&RootSystem::c(n as usize), &r_l_weight(n, sigma_bar, l))
        .expect("(l+σ̄, l, 0, …) is C_n-dominant");
    let small = casimir(
        &RootSystem::c(1),
        &HighestWeight::from_integers(&[sigma_bar as i64]),
    )
    .expect("σ̄ ≥ 0 is C₁-dominant");
    rational(2, 1) * (big - small)
}

/// An irreducible representation of `Sp(1) = SU(2)`, labelled by its
/// highest weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sp1Irrep {
    pub sigma_bar: u32,
}

impl Sp1Irrep {
    pub fn new(sigma_bar: u32) -> Self {
        Self { sigma_bar }
    }

    pub fn dim(&self) -> u32 {
        self.sigma_bar + 1
    }

    pub fn character(&self, theta: f64) -> f64 {
        sp1_character(self.sigma_bar, theta)
    }
}

/// `χ_σ(θ) = sin((σ̄+1)θ)/sin θ`, evaluated as the Chebyshev polynomial
/// `U_σ̄(cos θ)` so that `θ → 0, π` need no special casing.
pub fn sp1_character(sigma_bar: u32, theta: f64) -> f64 {
    let x = theta.cos();
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if sigma_bar == 0 {
        return 1.0;
    }
    for _ in 1..sigma_bar {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

const SCHUR_NODES_PER_PANEL: usize = 32;

/// `⟨χ_a, χ_b⟩ = (2/π) ∫₀^π χ_a(θ) χ_b(θ) sin²θ dθ` by composite
/// Gauss–Legendre with about `quadrature_points` nodes.
pub fn character_inner_product(a: u32, b: u32, quadrature_points: usize) -> Result<f64> {
    if quadrature_points < 64 {
        return Err(Error::InvalidParameter(format!(
            "quadrature_points must be at least 64, got {quadrature_points}"
        )));
    }
    let panels = quadrature_points.div_ceil(SCHUR_NODES_PER_PANEL);
    let rule = GaussLegendre::new(SCHUR_NODES_PER_PANEL);
    let integral = rule.integrate_composite(0.0, std::f64::consts::PI, panels, |t| {
        let s = t.sin();
        sp1_character(a, t) * sp1_character(b, t) * s * s
    });
    Ok(integral * 2.0 / std::f64::consts::PI)
}

/// `‖χ_σ‖²` against the normalised class measure; 1 for every irreducible.
pub fn schur_norm(sigma_bar: u32, quadrature_points: usize) -> Result<f64> {
    character_inner_product(sigma_bar, sigma_bar, quadrature_points)
}

/// Float view of an exact rational, for reports.
pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
