//! Radial eigenfunctions in the three coordinate systems used for the
//! Sp(1)-Kepler problem:
//!
//! * `ρ = |Z|` on the cone, measure `ρ^{4n−4} dρ`;
//! * `t = ρ²`, measure `t^{2n} dt`, where the radial equation is of
//!   Coulomb type;
//! * `r`, the radius of the `4n`-dimensional oscillator reached by the twist.
//!
//! Half-integral `ℓ = l + σ̄/2` is carried as the integer `2ℓ`.

mod eigensolve;
pub(crate) mod finite_diff;
mod jet;
mod laguerre;
mod micz;
mod wavefunction;

pub use eigensolve::{
    bound_state_count, eigensolve, eigensolve_detailed, suggested_t_max, Eigenpairs, MAX_COUNT, MIN_GRID_SIZE,
};
pub use laguerre::{laguerre, laguerre_derivative, laguerre_second_derivative};
pub use micz::{micz_check, micz_radial, rho_hamiltonian, MiczReport, OperatorSample};
pub use wavefunction::{
    kepler_residual, kepler_residual_with_coupling, node_count, orthogonality_check,
    oscillator_eigenvalue_readback, oscillator_profile, oscillator_residual, radial_rho, radial_t,
    t_inner_product, twist_ratio_stats, twist_ratio_variance, twisted_radial, GramMatrix, RadialForm,
};

use crate::error::{Error, Result};
use crate::spectral::{ModelParams, QuantumNumbers};

/// One closed-form bound state `(k, l)` of a given model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState {
    params: ModelParams,
    quantum: QuantumNumbers,
    norm_t: f64,
}

impl RadialState {
    pub fn new(params: ModelParams, quantum: QuantumNumbers) -> Self {
        let mut s = Self {
            params,
            quantum,
            norm_t: 1.0,
        };
        s.norm_t = wavefunction::normalization_constant(&s);
        s
    }

    pub fn from_numbers(n: u32, sigma_bar: u32, k: u32, l: u32) -> Result<Self> {
        Ok(Self::new(
            ModelParams::new(n, sigma_bar)?,
            QuantumNumbers::new(k, l)?,
        ))
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn quantum(&self) -> QuantumNumbers {
        self.quantum
    }

    pub fn n(&self) -> u32 {
        self.params.n()
    }

    pub fn k(&self) -> u32 {
        self.quantum.k()
    }

    pub fn l(&self) -> u32 {
        self.quantum.l()
    }

    pub fn principal(&self) -> u32 {
        self.quantum.principal()
    }

    /// `2ℓ = 2l + σ̄`, which is also the oscillator angular degree `L`.
    pub fn two_ell(&self) -> u32 {
        2 * self.l() + self.params.sigma_bar()
    }

    pub fn ell(&self) -> f64 {
        self.two_ell() as f64 / 2.0
    }

    /// `ν = k + ℓ + n − 1 = I + n + σ̄/2`.
    pub fn nu(&self) -> f64 {
        self.k() as f64 + self.ell() + self.n() as f64 - 1.0
    }

    /// Laguerre index `a = 2l + σ̄ + 2n − 1`.
    pub fn laguerre_index(&self) -> u32 {
        self.two_ell() + 2 * self.n() - 1
    }

    /// Laguerre degree `m = k − 1`.
    pub fn laguerre_degree(&self) -> u32 {
        self.k() - 1
    }

    /// `E = −1/(2ν²)`.
    pub fn energy(&self) -> f64 {
        -0.5 / (self.nu() * self.nu())
    }

    /// Constant making `∫ R² t^{2n} dt = 1`.
    pub fn norm_t(&self) -> f64 {
        self.norm_t
    }

    /// Eigenvalue of the twisted state under `−½Δ + ½r²`: `2I + σ̄ + 2n`.
    pub fn oscillator_eigenvalue(&self) -> u32 {
        2 * self.principal() + self.params.sigma_bar() + 2 * self.n()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Uniform,
    Graded,
}

/// Sample points in `(0, ∞)` plus the exponent of the radial measure they
/// are meant for (`2n` for `t`, `4n − 1` for `r`).
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    points: Vec<f64>,
    weight_exponent: u32,
    spacing: Spacing,
}

impl RadialGrid {
    pub fn uniform(lo: f64, hi: f64, count: usize, weight_exponent: u32) -> Result<Self> {
        Self::check_bounds(lo, hi, count)?;
        let step = (hi - lo) / (count - 1) as f64;
        Ok(Self {
            points: (0..count).map(|i| lo + step * i as f64).collect(),
            weight_exponent,
            spacing: Spacing::Uniform,
        })
    }

    /// Geometrically graded points, denser near `lo`.
    pub fn graded(lo: f64, hi: f64, count: usize, weight_exponent: u32) -> Result<Self> {
        Self::check_bounds(lo, hi, count)?;
        let ratio = (hi / lo).ln() / (count - 1) as f64;
        Ok(Self {
            points: (0..count).map(|i| lo * (ratio * i as f64).exp()).collect(),
            weight_exponent,
            spacing: Spacing::Graded,
        })
    }

    fn check_bounds(lo: f64, hi: f64, count: usize) -> Result<()> {
        if !(lo > 0.0) || !(hi > lo) || count < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs 0 < lo < hi and at least 2 points (got lo={lo}, hi={hi}, count={count})"
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weight_exponent(&self) -> u32 {
        self.weight_exponent
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }
}
