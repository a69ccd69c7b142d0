//! Parameter sweeps that turn the identities of the other modules into
//! named pass/fail checks. Each sweep returns one [`Criterion`]; [`all`]
//! runs every sweep over its default range.

use std::fmt::Display;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::{
    embed_u2n, embed_u4n, metric_identity_residual, ostar_defects, quotient_factor_check, sp_n_in_ostar,
    weight_double, ComplexMatrix, TangentSample,
};
use crate::qlinalg::{QMatrix, QVector};
use crate::radial::{
    eigensolve, kepler_residual, micz_check, orthogonality_check, oscillator_eigenvalue_readback,
    oscillator_residual, suggested_t_max, twist_ratio_stats, RadialGrid, RadialState,
};
use crate::rep::{
    angular_eigenvalue, casimir_difference_doubled, character_inner_product, dim_r_l, r_l_weight, schur_norm,
    weyl_dim, RootSystem,
};
use crate::spectral::{
    dimension_equality_check, energy, energy_kl, genfunc_check, ktype_dim_check, ModelParams, QuantumNumbers,
};

/// One comparison. Exact checks carry `lhs`/`rhs`; numerical ones carry a
/// `residual` and the `tolerance` it was held to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn exact<T: Display + PartialEq>(name: impl Into<String>, lhs: T, rhs: T) -> Self {
        Self {
            name: name.into(),
            pass: lhs == rhs,
            lhs: Some(lhs.to_string()),
            rhs: Some(rhs.to_string()),
            residual: None,
            tolerance: None,
        }
    }

    /// Passes iff `residual < tolerance` (a NaN residual fails).
    pub fn residual(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            pass: residual < tolerance,
            lhs: None,
            rhs: None,
            residual: Some(residual),
            tolerance: Some(tolerance),
        }
    }

    /// Numerical `lhs` against `rhs` with `residual = |lhs − rhs|`.
    pub fn close(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let mut c = Self::residual(name, (lhs - rhs).abs(), tolerance);
        c.lhs = Some(format!("{lhs:.17e}"));
        c.rhs = Some(format!("{rhs:.17e}"));
        c
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: u32,
    pub name: String,
    pub checks: Vec<Check>,
}

impl Criterion {
    fn new(id: u32, name: &str, checks: Vec<Check>) -> Self {
        Self {
            id,
            name: name.to_string(),
            checks,
        }
    }

    /// All checks pass; an empty sweep passes.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Largest residual among the numerical checks.
    pub fn max_residual(&self) -> Option<f64> {
        self.checks.iter().filter_map(|c| c.residual).reduce(f64::max)
    }
}

fn params(n: u32, sigma_bar: u32) -> Result<ModelParams> {
    ModelParams::new(n, sigma_bar)
}

pub const SPECTRUM_TOL: f64 = 1e-4;
pub const RESIDUAL_TOL: f64 = 1e-8;
pub const TWIST_TOL: f64 = 1e-20;
pub const MICZ_TOL: f64 = 1e-6;
pub const METRIC_TOL: f64 = 1e-12;
pub const QUOTIENT_TOL: f64 = 1e-13;
pub const OSTAR_TOL: f64 = 1e-10;
pub const SCHUR_TOL: f64 = 1e-6;
pub const GRAM_TOL: f64 = 1e-7;

/// Lowest `count` eigensolver values of every channel against the closed-form
/// spectrum, relative error.
pub fn spectrum(
    ns: &[u32],
    sigma_max: u32,
    l_max: u32,
    count: usize,
    grid_size: usize,
    tol: Option<f64>,
) -> Result<Criterion> {
    let tol = tol.unwrap_or(SPECTRUM_TOL);
    let mut checks = Vec::new();
    for &n in ns {
        for sb in 0..=sigma_max {
            let p = params(n, sb)?;
            for l in 0..=l_max {
                let values = eigensolve(&p, l, grid_size, suggested_t_max(&p, l, count), count)?;
                for (idx, value) in values.into_iter().enumerate() {
                    let k = idx as u32 + 1;
                    let exact = energy_kl(&p, &QuantumNumbers::new(k, l)?).value;
                    let mut c = Check::residual(
                        format!("n={n} sigma={sb} l={l} k={k}"),
                        (value / exact - 1.0).abs(),
                        tol,
                    );
                    c.lhs = Some(format!("{value:.17e}"));
                    c.rhs = Some(format!("{exact:.17e}"));
                    checks.push(c);
                }
            }
        }
    }
    Ok(Criterion::new(1, "spectrum formula", checks))
}

/// `E_{k,l} = E_{k−1+l}` as rationals for `k + l ≤ kl_max`.
pub fn collapse(ns: &[u32], sigma_max: u32, kl_max: u32) -> Result<Criterion> {
    let mut checks = Vec::new();
    for &n in ns {
        for sb in 0..=sigma_max {
            let p = params(n, sb)?;
            for k in 1..=kl_max {
                for l in 0..=(kl_max - k) {
                    checks.push(Check::exact(
                        format!("n={n} sigma={sb} k={k} l={l}"),
                        energy_kl(&p, &QuantumNumbers::new(k, l)?).exact,
                        energy(&p, k - 1 + l).exact,
                    ));
                }
            }
        }
    }
    Ok(Criterion::new(2, "eigenvalue collapse", checks))
}

pub fn dimension_equality(ns: &[u32], k_max: u32) -> Result<Criterion> {
    let mut checks = Vec::new();
    for &n in ns {
        for k in 0..=k_max {
            let r = dimension_equality_check(n, k)?;
            checks.push(Check::exact(format!("n={n} k={k}"), r.lhs, r.rhs));
        }
    }
    Ok(Criterion::new(3, "dimension equality", checks))
}

pub fn genfunc(ns: &[u32], k_max: u32) -> Result<Criterion> {
    let mut checks = Vec::new();
    for &n in ns {
        let r = genfunc_check(n, k_max)?;
        for (k, b) in r.binomial.iter().enumerate() {
            checks.push(Check::exact(
                format!("n={n} t^{k} level sum"),
                &r.coefficients[k],
                b,
            ));
            checks.push(Check::exact(
                format!("n={n} t^{k} double sum"),
                r.divided[k].clone(),
                BigInt::from(b.clone()),
            ));
        }
    }
    Ok(Criterion::new(4, "generating function", checks))
}

/// Closed-form `dim 𝓡_l(σ)` against the Weyl formula for `C_n`.
pub fn weyl_dims(n_max: u32, l_max: u32, sigma_max: u32) -> Result<Criterion> {
    let mut checks = Vec::new();
    for n in 2..=n_max {
        let rs = RootSystem::c(n as usize);
        for l in 0..=l_max {
            for sb in 0..=sigma_max {
                checks.push(Check::exact(
                    format!("n={n} l={l} sigma={sb}"),
                    dim_r_l(n, sb, l),
                    weyl_dim(&rs, &r_l_weight(n, sb, l))?,
                ));
            }
        }
    }
    Ok(Criterion::new(5, "closed-form vs Weyl dimensions", checks))
}

pub fn ktype_dims(ns: &[u32], sigma_max: u32, i_max: u32) -> Result<Criterion> {
    let mut checks = Vec::new();
    for &n in ns {
        for sb in 0..=sigma_max {
            let p = params(n, sb)?;
            for i in 0..=i_max {
                let r = ktype_dim_check(&p, i);
                checks.push(Check::exact(
                    format!("n={n} sigma={sb} I={i}"),
                    r.u2n_dim,
                    r.sp_sum,
                ));
            }
        }
    }
    Ok(Criterion::new(6, "K-type dimensions", checks))
}

pub fn casimir(n_max: u32, l_max: u32, sigma_max: u32) -> Result<Criterion> {
    let mut checks = Vec::new();
    for n in 2..=n_max {
        for l in 0..=l_max {
            for sb in 0..=sigma_max {
                checks.push(Check::exact(
                    format!("n={n} l={l} sigma={sb}"),
                    angular_eigenvalue(n, sb, l),
                    casimir_difference_doubled(n, sb, l),
                ));
            }
        }
    }
    Ok(Criterion::new(7, "Casimir/Laplacian identity", checks))
}

fn kepler_grid(n: u32) -> Result<RadialGrid> {
    RadialGrid::uniform(0.1, 30.0, 300, 2 * n)
}

fn oscillator_grid(n: u32) -> Result<RadialGrid> {
    RadialGrid::uniform(0.1, 6.0, 300, 4 * n - 1)
}

/// Closed-form states `(k, l)` with `k ≤ k_max`, `l ≤ l_max`.
fn states(n: u32, sb: u32, k_max: u32, l_max: u32) -> Result<Vec<RadialState>> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        for l in 0..=l_max {
            out.push(RadialState::from_numbers(n, sb, k, l)?);
        }
    }
    Ok(out)
}

pub fn residuals(ns: &[u32], k_max: u32, l_max: u32, sigma_max: u32, tol: Option<f64>) -> Result<Criterion> {
    let tol = tol.unwrap_or(RESIDUAL_TOL);
    let mut checks = Vec::new();
    for &n in ns {
        let (tg, rg) = (kepler_grid(n)?, oscillator_grid(n)?);
        for sb in 0..=sigma_max {
            for s in states(n, sb, k_max, l_max)? {
                let tag = format!("n={n} sigma={sb} k={} l={}", s.k(), s.l());
                checks.push(Check::residual(
                    format!("kepler {tag}"),
                    kepler_residual(&s, &tg),
                    tol,
                ));
                checks.push(Check::residual(
                    format!("oscillator {tag}"),
                    oscillator_residual(&s, &rg),
                    tol,
                ));
                let readback = oscillator_eigenvalue_readback(&s, &rg);
                let mut c = Check::exact(
                    format!("eigenvalue {tag}"),
                    readback.round() as i64,
                    s.oscillator_eigenvalue() as i64,
                );
                c.residual = Some((readback - s.oscillator_eigenvalue() as f64).abs());
                c.tolerance = Some(tol);
                c.pass &= c.residual < c.tolerance;
                checks.push(c);
            }
        }
    }
    Ok(Criterion::new(8, "radial ODE residuals", checks))
}

pub fn twist(ns: &[u32], k_max: u32, l_max: u32, sigma_max: u32, tol: Option<f64>) -> Result<Criterion> {
    let tol = tol.unwrap_or(TWIST_TOL);
    let mut checks = Vec::new();
    for &n in ns {
        let grid = RadialGrid::uniform(0.2, 5.0, 200, 4 * n - 1)?;
        for sb in 0..=sigma_max {
            for s in states(n, sb, k_max, l_max)? {
                let tag = format!("n={n} sigma={sb} k={} l={}", s.k(), s.l());
                let (mean, var) = twist_ratio_stats(&s, &grid)?;
                checks.push(Check::residual(format!("variance {tag}"), var, tol));
                // scale-free form of the same statement
                checks.push(Check::residual(
                    format!("relative variance {tag}"),
                    var / (mean * mean),
                    tol,
                ));
            }
        }
    }
    Ok(Criterion::new(9, "twist correspondence", checks))
}

pub fn micz(sigma_max: u32, i_max: u32, tol: Option<f64>) -> Result<Criterion> {
    let tol = tol.unwrap_or(MICZ_TOL);
    let grid = RadialGrid::uniform(0.5, 10.0, 96, 4)?;
    let mut checks = Vec::new();
    for sb in 0..=sigma_max {
        let p = params(2, sb)?;
        let r = micz_check(&p, i_max, &[0, 1, 2], &grid)?;
        checks.push(Check::exact(
            format!("sigma={sb} spectrum I<={i_max} mismatches"),
            r.spectrum_mismatches.len(),
            0,
        ));
        for s in &r.samples {
            checks.push(Check::residual(
                format!("sigma={sb} l={} phi={}", s.l, s.function),
                s.max_residual,
                tol,
            ));
        }
        checks.push(Check::close(
            format!("sigma={sb} centrifugal mu^2+mu"),
            r.centrifugal_fit,
            r.centrifugal_expected,
            tol,
        ));
    }
    Ok(Criterion::new(10, "MICZ equivalence", checks))
}

pub fn metric(ns: &[u32], samples: usize, seed: u64, tol: Option<f64>) -> Result<Criterion> {
    let (tol, qtol) = tol.map_or((METRIC_TOL, QUOTIENT_TOL), |t| (t, t));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for &n in ns {
        let n = n as usize;
        let worst = (0..samples)
            .map(|_| metric_identity_residual(&TangentSample::random(n, &mut rng)))
            .fold(0.0, f64::max);
        checks.push(Check::residual(
            format!("n={n} metric identity, {samples} samples"),
            worst,
            tol,
        ));
        let worst_ratio = (0..samples)
            .map(|_| {
                let a = QVector::random(n - 1, &mut rng);
                let b = QVector::random(n - 1, &mut rng);
                quotient_factor_check(&a, &b).map(|(g, s)| if s == 0.0 { 0.0 } else { (g / s - 2.0).abs() })
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        checks.push(Check::residual(
            format!("n={n} quotient factor 2"),
            worst_ratio,
            qtol,
        ));
    }
    Ok(Criterion::new(11, "metric identities", checks))
}

/// Slot of each diagonal phase of `A` inside the lower block of
/// [`embed_u4n`]`(A)`, 1-based in `1..=4n`.
fn phase_slots(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<usize>> {
    let phases: Vec<Complex64> = (0..2 * n)
        .map(|i| Complex64::from_polar(1.0, 0.1 + 0.5 * i as f64 + rng.gen_range(0.0..0.1)))
        .collect();
    let big = embed_u4n(&ComplexMatrix::from_diagonal(&phases))?;
    Ok(phases
        .iter()
        .map(|z| {
            (2 * n..4 * n)
                .min_by(|&a, &b| (big.0[(a, a)] - z).norm().total_cmp(&(big.0[(b, b)] - z).norm()))
                .expect("non-empty block")
                + 1
        })
        .collect())
}

pub fn ostar(
    ns: &[u32],
    samples: usize,
    weight_n_max: usize,
    seed: u64,
    tol: Option<f64>,
) -> Result<Criterion> {
    let tol = tol.unwrap_or(OSTAR_TOL);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for &n in ns {
        let n = n as usize;
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let g = embed_u2n(&ComplexMatrix::random_unitary(2 * n, &mut rng))?;
            let (d1, d2) = ostar_defects(&g)?;
            worst = worst.max(d1).max(d2);
        }
        checks.push(Check::residual(
            format!("n={n} U(2n) images, {samples} samples"),
            worst,
            tol,
        ));

        let mut worst: f64 = 0.0;
        let mut members = 0usize;
        for _ in 0..samples {
            let m = QMatrix::random_symplectic(n, 3 * n, &mut rng);
            if sp_n_in_ostar(&m, tol)? {
                members += 1;
            }
            let (d1, d2) = ostar_defects(&embed_u2n(&ComplexMatrix(m.to_complex()))?)?;
            worst = worst.max(d1).max(d2);
        }
        checks.push(Check::residual(
            format!("n={n} Sp(n) images, {samples} samples"),
            worst,
            tol,
        ));
        checks.push(Check::exact(format!("n={n} Sp(n) members"), members, samples));
    }
    for n in 1..=weight_n_max {
        let slots = phase_slots(n, &mut rng)?;
        let formula = (1..=2 * n)
            .map(|i| weight_double(i, n))
            .collect::<Result<Vec<_>>>()?;
        let mut sorted = formula.clone();
        sorted.sort_unstable();
        let bijective = sorted == (2 * n + 1..=4 * n).collect::<Vec<_>>();
        checks.push(Check::exact(
            format!("n={n} weight doubling vs embedding"),
            format!("{formula:?}"),
            format!("{slots:?}"),
        ));
        checks.push(Check::exact(
            format!("n={n} weight doubling bijective"),
            bijective,
            true,
        ));
    }
    Ok(Criterion::new(12, "O*(4n) identities", checks))
}

pub fn schur(sigma_max: u32, points: usize, tol: Option<f64>) -> Result<Criterion> {
    let tol = tol.unwrap_or(SCHUR_TOL);
    let mut checks = Vec::new();
    for a in 0..=sigma_max {
        checks.push(Check::close(
            format!("norm sigma={a}"),
            schur_norm(a, points)?,
            1.0,
            tol,
        ));
        for b in (a + 1)..=sigma_max {
            checks.push(Check::residual(
                format!("cross sigma={a},{b}"),
                character_inner_product(a, b, points)?.abs(),
                tol,
            ));
        }
    }
    Ok(Criterion::new(13, "Schur norm", checks))
}

pub const GRAM_QUADRATURE: usize = 4096;

pub fn orthonormality(n: u32, sigma_max: u32, l_max: u32, k_max: u32, tol: Option<f64>) -> Result<Criterion> {
    let tol = tol.unwrap_or(GRAM_TOL);
    let mut checks = Vec::new();
    for sb in 0..=sigma_max {
        let p = params(n, sb)?;
        for l in 0..=l_max {
            let g = orthogonality_check(&p, l, k_max, GRAM_QUADRATURE)?;
            checks.push(Check::residual(
                format!("n={n} sigma={sb} l={l} {k_max}x{k_max}"),
                g.max_deviation_from_identity(),
                tol,
            ));
        }
    }
    Ok(Criterion::new(14, "orthonormality", checks))
}

/// Number of criteria run by [`all`].
pub const CRITERIA: u32 = 14;

pub const DEFAULT_SEED: u64 = 7;

/// Every sweep over its default range, in criterion order.
pub fn all(seed: u64, tol: Option<f64>) -> Result<Vec<Criterion>> {
    Ok(vec![
        spectrum(&[2, 3], 3, 2, 3, 4000, tol)?,
        collapse(&[2, 3, 4], 6, 12)?,
        dimension_equality(&[2, 3, 4], 12)?,
        genfunc(&[2, 3, 4], 12)?,
        weyl_dims(4, 6, 6)?,
        ktype_dims(&[2, 3], 5, 5)?,
        casimir(5, 8, 8)?,
        residuals(&[2, 3], 5, 3, 3, tol)?,
        twist(&[2, 3], 5, 3, 3, tol)?,
        micz(6, 20, tol)?,
        metric(&[2, 3, 4], 1000, seed, tol)?,
        ostar(&[2, 3], 100, 6, seed, tol)?,
        schur(10, 256, tol)?,
        orthonormality(2, 2, 2, 6, tol)?,
    ])
}

/// `Σ_{l ≤ I} dim 𝓡_l(σ)` spelled out, for table rendering.
pub fn degeneracy_terms(p: &ModelParams, i: u32) -> Vec<BigUint> {
    (0..=i).map(|l| dim_r_l(p.n(), p.sigma_bar(), l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_and_residual_checks() {
        assert!(Check::exact("x", 3, 3).pass);
        assert!(!Check::exact("x", 3, 4).pass);
        assert!(Check::residual("r", 1e-9, 1e-8).pass);
        assert!(!Check::residual("r", f64::NAN, 1e-8).pass);
        assert!(!Check::close("c", 1.0, 1.1, 1e-3).pass);
    }

    #[test]
    fn empty_sweep_passes() {
        let c = collapse(&[], 0, 0).unwrap();
        assert!(c.checks.is_empty() && c.pass());
    }

    #[test]
    fn small_sweeps_pass() {
        assert!(dimension_equality(&[2], 4).unwrap().pass());
        assert!(casimir(3, 2, 2).unwrap().pass());
        assert!(ostar(&[2], 5, 3, 1, None).unwrap().pass());
        assert!(metric(&[2], 20, 1, None).unwrap().pass());
    }

    #[test]
    fn loose_failure_is_reported() {
        let c = schur(2, 256, Some(0.0)).unwrap();
        assert!(!c.pass());
        assert!(c.failures().count() > 0);
    }
}
