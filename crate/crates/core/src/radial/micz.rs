//! The `n = 2` Sp(1)-Kepler problem as the five-dimensional MICZ-Kepler
//! problem with magnetic charge `μ = σ̄/2`.
//!
//! The radial part of the cone Hamiltonian in `ρ` is conjugated by
//! `ρ^{5/2}` and rewritten in `r = ρ²`; the result is compared pointwise
//! with the radial MICZ operator
//! `ĥ_μ Φ = −½(Φ″ + 4Φ′/r) + (Λ + μ² + μ)/(2r²)·Φ − Φ/r`.
//! Here `Λ` is the `S⁴` part of the angular eigenvalue, one quarter of the
//! twisted `ℍP¹` Laplacian eigenvalue.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::finite_diff::{first_derivative, second_derivative};
use super::RadialGrid;
use crate::error::{Error, Result};
use crate::rep::{angular_eigenvalue, to_f64};
use crate::spectral::{energy, ModelParams};

pub const OPERATOR_TOL: f64 = 1e-6;
const FD_STEP: f64 = 1e-2;

fn require_n2(p: &ModelParams) -> Result<()> {
    if p.n() != 2 {
        return Err(Error::InvalidParameter(format!(
            "the MICZ correspondence needs n = 2, got n = {}",
            p.n()
        )));
    }
    Ok(())
}

/// The radial cone Hamiltonian applied to `f` at `ρ`:
/// `−(g″ + (4n−4)g′/ρ)/(8ρ) + (ℓ² + (2n−1)ℓ + (3/2)(n − 7/8))/(2ρ⁴)·f − f/ρ²`
/// with `g = f/ρ`. Derivatives are eighth-order central differences.
pub fn rho_hamiltonian(p: &ModelParams, l: u32, f: impl Fn(f64) -> f64, rho: f64) -> Result<f64> {
    if !(rho > 4.0 * FD_STEP) {
        return Err(Error::NonPositiveCoordinate(rho));
    }
    let n = p.n() as f64;
    let ell = l as f64 + p.sigma_bar() as f64 / 2.0;
    let g = |x: f64| f(x) / x;
    let g1 = first_derivative(g, rho, FD_STEP);
    let g2 = second_derivative(g, rho, FD_STEP);
    let coupling = ell * ell + (2.0 * n - 1.0) * ell + 1.5 * (n - 0.875);
    let fr = f(rho);
    Ok(
        -(g2 + (4.0 * n - 4.0) * g1 / rho) / (8.0 * rho) + coupling / (2.0 * rho.powi(4)) * fr
            - fr / (rho * rho),
    )
}

/// `Λ = (l+μ)(l+μ+3) − μ(μ+1)`.
fn sphere_eigenvalue(sigma_bar: u32, l: u32) -> f64 {
    to_f64(&(angular_eigenvalue(2, sigma_bar, l) / BigRational::from_integer(BigInt::from(4))))
}

/// `ĥ_μ Φ` at `r` for the `l`-th angular channel, `μ = σ̄/2`.
pub fn micz_radial(sigma_bar: u32, l: u32, phi: impl Fn(f64) -> f64, r: f64) -> Result<f64> {
    if !(r > 4.0 * FD_STEP) {
        return Err(Error::NonPositiveCoordinate(r));
    }
    let mu = sigma_bar as f64 / 2.0;
    let d1 = first_derivative(&phi, r, FD_STEP);
    let d2 = second_derivative(&phi, r, FD_STEP);
    let v = phi(r);
    Ok(
        -0.5 * (d2 + 4.0 * d1 / r) + (sphere_eigenvalue(sigma_bar, l) + mu * mu + mu) / (2.0 * r * r) * v
            - v / r,
    )
}

/// `r^{−5/4}·(H R̃)(√r)` with `R̃(ρ) = ρ^{5/2}Φ(ρ²)`.
fn conjugated(p: &ModelParams, l: u32, phi: &dyn Fn(f64) -> f64, r: f64) -> Result<f64> {
    let lifted = |rho: f64| rho.powf(2.5) * phi(rho * rho);
    Ok(rho_hamiltonian(p, l, lifted, r.sqrt())? / r.powf(1.25))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorSample {
    pub function: String,
    pub l: u32,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MiczReport {
    pub sigma_bar: u32,
    /// Levels `I = 0..=i_max` compared exactly.
    pub i_max: u32,
    pub spectrum_mismatches: Vec<u32>,
    pub samples: Vec<OperatorSample>,
    /// `1/r²` coefficient of the conjugated operator minus `Λ`, least-squares
    /// fitted, next to `μ² + μ`.
    pub centrifugal_fit: f64,
    pub centrifugal_expected: f64,
    pub pass: bool,
}

impl MiczReport {
    pub fn max_residual(&self) -> f64 {
        self.samples.iter().map(|s| s.max_residual).fold(0.0, f64::max)
    }
}

type TestFunction = (&'static str, fn(f64) -> f64);

const TEST_FUNCTIONS: [TestFunction; 3] = [
    ("exp(-r)", |r| (-r).exp()),
    ("r*exp(-r/2)", |r| r * (-r / 2.0).exp()),
    ("exp(-r^2/8)", |r| (-r * r / 8.0).exp()),
];

/// `−(1/2)/(I + 2 + μ)²` written as `−2/(2I + 4 + σ̄)²`.
fn micz_level(sigma_bar: u32, i: u32) -> BigRational {
    let d = BigInt::from(2 * i as i64 + 4 + sigma_bar as i64);
    BigRational::new(BigInt::from(-2), &d * &d)
}

pub fn micz_check(p: &ModelParams, i_max: u32, ls: &[u32], grid: &RadialGrid) -> Result<MiczReport> {
    require_n2(p)?;
    let sb = p.sigma_bar();
    let spectrum_mismatches: Vec<u32> = (0..=i_max)
        .filter(|&i| energy(p, i).exact != micz_level(sb, i))
        .collect();

    let mut samples = Vec::new();
    for &l in ls {
        for (name, phi) in TEST_FUNCTIONS {
            let mut worst: f64 = 0.0;
            for &r in grid.points() {
                let lhs = conjugated(p, l, &phi, r)?;
                let rhs = micz_radial(sb, l, phi, r)?;
                worst = worst.max((lhs - rhs).abs());
            }
            samples.push(OperatorSample {
                function: name.to_string(),
                l,
                max_residual: worst,
            });
        }
    }

    // Strip the kinetic and Coulomb parts from the conjugated image of
    // e^{−r}; what remains is c/(2r²)·Φ with c = Λ + μ² + μ.
    let l0 = ls.first().copied().unwrap_or(0);
    let phi = TEST_FUNCTIONS[0].1;
    let (mut num, mut den) = (0.0, 0.0);
    for &r in grid.points() {
        let v = phi(r);
        let kinetic =
            -0.5 * (second_derivative(phi, r, FD_STEP) + 4.0 * first_derivative(phi, r, FD_STEP) / r);
        let rest = conjugated(p, l0, &phi, r)? - kinetic + v / r;
        let basis = v / (2.0 * r * r);
        num += rest * basis;
        den += basis * basis;
    }
    let centrifugal_fit = num / den - sphere_eigenvalue(sb, l0);
    let mu = sb as f64 / 2.0;
    let centrifugal_expected = mu * mu + mu;

    let pass = spectrum_mismatches.is_empty()
        && samples.iter().all(|s| s.max_residual < OPERATOR_TOL)
        && (centrifugal_fit - centrifugal_expected).abs() < OPERATOR_TOL;
    Ok(MiczReport {
        sigma_bar: sb,
        i_max,
        spectrum_mismatches,
        samples,
        centrifugal_fit,
        centrifugal_expected,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{radial_rho, RadialState};
    use super::*;

    fn grid() -> RadialGrid {
        RadialGrid::uniform(0.5, 10.0, 96, 4).unwrap()
    }

    #[test]
    fn passes_for_all_charges() {
        for sb in 0..=6 {
            let p = ModelParams::new(2, sb).unwrap();
            let rep = micz_check(&p, 20, &[0, 1, 2], &grid()).unwrap();
            assert!(rep.pass, "{rep:?}");
            assert_eq!(rep.samples.len(), 9);
        }
    }

    #[test]
    fn rejects_other_ranks() {
        let p = ModelParams::new(3, 0).unwrap();
        assert!(micz_check(&p, 3, &[0], &grid()).is_err());
    }

    #[test]
    fn centrifugal_term_recovered() {
        let p = ModelParams::new(2, 3).unwrap();
        let rep = micz_check(&p, 0, &[1], &grid()).unwrap();
        assert!((rep.centrifugal_fit - 1.5 * 2.5).abs() < 1e-6);
    }

    #[test]
    fn closed_form_states_are_eigenfunctions_of_the_cone_hamiltonian() {
        for n in [2, 3] {
            for (k, l, sb) in [(1, 0, 0), (2, 1, 1), (3, 0, 2)] {
                let s = RadialState::from_numbers(n, sb, k, l).unwrap();
                let f = |rho: f64| radial_rho(&s, rho, false).unwrap();
                for rho in [0.6, 1.0, 1.7, 2.5] {
                    let h = rho_hamiltonian(&s.params(), l, f, rho).unwrap();
                    let scale = f(rho).abs().max(1e-3);
                    assert!(
                        (h - s.energy() * f(rho)).abs() / scale < 1e-7,
                        "n={n} k={k} l={l} ρ={rho}"
                    );
                }
            }
        }
    }

    #[test]
    fn wrong_charge_breaks_operator_identity() {
        let p = ModelParams::new(2, 2).unwrap();
        let r = 1.3;
        let phi = |r: f64| (-r).exp();
        let lhs = conjugated(&p, 0, &phi, r).unwrap();
        let wrong = micz_radial(0, 0, phi, r).unwrap();
        assert!((lhs - wrong).abs() > 1e-3);
    }
}
