//! Bound-state energies, degeneracies, the dimension equality against the
//! `4n`-dimensional isotropic oscillator and `Ũ(2n)` K-type bookkeeping.
//!
//! Energies are exact rationals; floats appear only at the boundary.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rep::{self, binomial, dim_r_l, HighestWeight, RootSystem};

/// The pair `(n, σ̄)` fixing one Sp(1)-Kepler problem in dimension `4n−3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelParams {
    n: u32,
    sigma_bar: u32,
}

impl ModelParams {
    pub fn new(n: u32, sigma_bar: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
        }
        Ok(Self { n, sigma_bar })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sigma_bar(&self) -> u32 {
        self.sigma_bar
    }
}

/// Radial number `k ≥ 1` and angular number `l ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    k: u32,
    l: u32,
}

impl QuantumNumbers {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        Ok(Self { k, l })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Principal number `I = k − 1 + l`.
    pub fn principal(&self) -> u32 {
        self.k - 1 + self.l
    }

    /// All `(k, l)` with `k − 1 + l = I`; there are `I + 1` of them.
    pub fn level(i: u32) -> Vec<Self> {
        (0..=i).map(|l| Self { k: i - l + 1, l }).collect()
    }
}

/// An exact energy together with its float rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct Energy {
    pub exact: BigRational,
    pub value: f64,
}

impl Energy {
    fn from_exact(exact: BigRational) -> Self {
        let value = rep::to_f64(&exact);
        Self { exact, value }
    }
}

/// `−(1/2)/(ν)²` with `2ν` given as an integer.
fn coulomb_level(two_nu: u64) -> BigRational {
    // −(1/2)/(2ν/2)² = −2/(2ν)²
    BigRational::new(BigInt::from(-2), BigInt::from(two_nu * two_nu))
}

/// `E_I = −(1/2)/(I + n + σ̄/2)²`.
pub fn energy(p: &ModelParams, i: u32) -> Energy {
    let two_nu = 2 * i as u64 + 2 * p.n as u64 + p.sigma_bar as u64;
    Energy::from_exact(coulomb_level(two_nu))
}

/// `E_{k(l+σ̄/2)} = −(1/2)/(k + l + (σ̄+2n)/2 − 1)²`, computed from `(k, l)`
/// directly rather than through `I`.
pub fn energy_kl(p: &ModelParams, q: &QuantumNumbers) -> Energy {
    let two_nu = 2 * q.k as u64 + 2 * q.l as u64 + p.sigma_bar as u64 + 2 * p.n as u64 - 2;
    Energy::from_exact(coulomb_level(two_nu))
}

/// `dim 𝓗_I(σ) = Σ_{l=0}^{I} dim 𝓡_l(σ)`.
pub fn degeneracy(p: &ModelParams, i: u32) -> BigUint {
    (0..=i).map(|l| dim_r_l(p.n, p.sigma_bar, l)).sum()
}

/// `C(4n+k−1, 4n−1)`, the dimension of the `k`-th level of the `4n`-dimensional
/// isotropic oscillator.
pub fn oscillator_level_dim(n: u32, k: u32) -> BigUint {
    let d = 4 * n as u64;
    binomial(d + k as u64 - 1, d - 1)
}

/// `Σ_{2I+σ̄=k} (σ̄+1)·dim 𝓗_I(σ)`.
pub fn dimension_equality_lhs(n: u32, k: u32) -> BigUint {
    (k % 2..=k)
        .step_by(2)
        .map(|s| {
            let p = ModelParams { n, sigma_bar: s };
            BigUint::from(s + 1) * degeneracy(&p, (k - s) / 2)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionEqualityReport {
    pub n: u32,
    pub k: u32,
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub pass: bool,
}

pub fn dimension_equality_check(n: u32, k: u32) -> Result<DimensionEqualityReport> {
    ModelParams::new(n, 0)?;
    let lhs = dimension_equality_lhs(n, k);
    let rhs = oscillator_level_dim(n, k);
    let pass = lhs == rhs;
    Ok(DimensionEqualityReport { n, k, lhs, rhs, pass })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenfuncReport {
    pub n: u32,
    /// Coefficients of `Σ_k lhs(n, k)·tᵏ`, `k = 0..=K`.
    pub coefficients: Vec<BigUint>,
    /// Coefficients of the same series multiplied by `(1 − t²)`, obtained
    /// from the double sum over `(p, q)`.
    pub reduced: Vec<BigInt>,
    /// `reduced` divided back by `(1 − t²)`.
    pub divided: Vec<BigInt>,
    /// Coefficients of `(1 − t)^{−4n}`.
    pub binomial: Vec<BigUint>,
    pub pass: bool,
}

/// Coefficient of `tᵐ` in
/// `Σ_{p,q≥0} (p−q)·C(p+2n−2, 2n−1)·C(q+2n−3, 2n−3)·t^{p+q−1}`.
fn reduced_coefficient(n: u32, m: u32) -> BigInt {
    let top = 2 * n as u64 - 1;
    let bottom = 2 * n as u64 - 3;
    let total = m as u64 + 1;
    (0..=total)
        .map(|p| {
            let q = total - p;
            let weight = BigInt::from(p as i64 - q as i64);
            let b1 = binomial(p + 2 * n as u64 - 2, top);
            let b2 = binomial(q + 2 * n as u64 - 3, bottom);
            weight * BigInt::from(b1 * b2)
        })
        .sum()
}

/// Three-way check of the generating function: the level sums, the
/// `(1 − t²)`-reduced double sum divided back by `(1 − t²)`, and the
/// binomial series of `(1 − t)^{−4n}` must agree coefficientwise.
pub fn genfunc_check(n: u32, max_k: u32) -> Result<GenfuncReport> {
    ModelParams::new(n, 0)?;
    if max_k < 1 {
        return Err(Error::InvalidParameter("K must be at least 1".into()));
    }
    let coefficients: Vec<BigUint> = (0..=max_k).map(|k| dimension_equality_lhs(n, k)).collect();
    let reduced: Vec<BigInt> = (0..=max_k).map(|m| reduced_coefficient(n, m)).collect();
    let binomial: Vec<BigUint> = (0..=max_k).map(|k| oscillator_level_dim(n, k)).collect();

    // divide by (1 − t²): c_k = s_k + c_{k−2}
    let mut divided: Vec<BigInt> = Vec::with_capacity(reduced.len());
    for (k, s) in reduced.iter().enumerate() {
        let prev = if k >= 2 {
            divided[k - 2].clone()
        } else {
            BigInt::zero()
        };
        divided.push(s + prev);
    }
    let pass = coefficients
        .iter()
        .zip(&divided)
        .zip(&binomial)
        .all(|((c, d), b)| BigInt::from(c.clone()) == *d && c == b);
    Ok(GenfuncReport {
        n,
        coefficients,
        divided,
        reduced,
        binomial,
        pass,
    })
}

/// `(−1, …, −1, −(1+I), −(1+I+σ̄))` of length `2n`.
pub fn ktype_weight(p: &ModelParams, i: u32) -> HighestWeight {
    let len = 2 * p.n as usize;
    let mut w = vec![-1i64; len];
    w[len - 2] = -(1 + i as i64);
    w[len - 1] = -(1 + i as i64 + p.sigma_bar as i64);
    HighestWeight::from_integers(&w)
}

/// `(−1, …, −1, −(1+σ̄))` of length `2n`: the highest weight of the whole
/// bound-state space as an `Õ*(4n)` module.
pub fn module_weight(p: &ModelParams) -> HighestWeight {
    let len = 2 * p.n as usize;
    let mut w = vec![-1i64; len];
    w[len - 1] = -(1 + p.sigma_bar as i64);
    HighestWeight::from_integers(&w)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KtypeDimReport {
    pub n: u32,
    pub sigma_bar: u32,
    pub level: u32,
    /// The K-type weight after the determinant shift, as a string.
    pub shifted_weight: String,
    pub u2n_dim: BigUint,
    pub sp_sum: BigUint,
    pub pass: bool,
}

/// Compares `dim` of the `Ũ(2n)` K-type (after shifting by
/// `(1+I+σ̄)·(1, …, 1)`) with `Σ_{l≤I} dim 𝓡_l(σ)`.
pub fn ktype_dim_check(p: &ModelParams, i: u32) -> KtypeDimReport {
    let shift = 1 + i as i64 + p.sigma_bar as i64;
    let shifted = ktype_weight(p, i).shifted_doubled(2 * shift);
    let rs = RootSystem::a(2 * p.n as usize - 1);
    let u2n_dim = rep::weyl_dim(&rs, &shifted).expect("shifted K-type weight is dominant");
    let sp_sum = degeneracy(p, i);
    KtypeDimReport {
        n: p.n,
        sigma_bar: p.sigma_bar,
        level: i,
        shifted_weight: shifted.to_string(),
        pass: u2n_dim == sp_sum,
        u2n_dim,
        sp_sum,
    }
}

/// `(l+σ̄+κ, l+κ, κ, …, κ)` or, if `conjugate`, its dual
/// `(−κ, …, −κ, −(l+κ), −(l+σ̄+κ))`. `κ` is passed doubled.
pub fn rkappa_weight(n: u32, sigma_bar: u32, l: u32, kappa_doubled: i64, conjugate: bool) -> HighestWeight {
    let len = 2 * n as usize;
    let mut w = vec![kappa_doubled; len];
    w[0] += 2 * (l + sigma_bar) as i64;
    w[1] += 2 * l as i64;
    let hw = HighestWeight::from_doubled(w);
    if conjugate {
        hw.dual()
    } else {
        hw
    }
}

/// One row of the level table.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelReport {
    pub level: u32,
    pub energy: Energy,
    pub degeneracy: BigUint,
    pub ktype_weight: HighestWeight,
}

pub fn level_report(p: &ModelParams, i: u32) -> LevelReport {
    LevelReport {
        level: i,
        energy: energy(p, i),
        degeneracy: degeneracy(p, i),
        ktype_weight: ktype_weight(p, i),
    }
}
