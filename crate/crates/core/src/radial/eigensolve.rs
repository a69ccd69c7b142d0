//! Finite-difference eigensolver for one angular channel of the
//! `t`-equation.
//!
//! With `u = tⁿ R` the `t^{2n}`-weighted operator becomes the Sturm–Liouville
//! form `−u″/2 + [(ℓ(ℓ+2n−1) + n(n−1))/(2t²) − 1/t] u = E u`. Three-point
//! differences on the uniform grid `tᵢ = i·h`, `h = t_max/N`, with
//! Dirichlet conditions at `t = 0` and `t = t_max`, give a symmetric
//! tridiagonal matrix; its lowest eigenvalues are found by Sturm-sequence
//! bisection and the eigenvectors by inverse iteration.

use crate::error::{Error, Result};
use crate::spectral::ModelParams;

pub const MIN_GRID_SIZE: usize = 500;
pub const MAX_COUNT: usize = 5;

/// Fraction of an eigenvector's mass allowed in the outer tenth of the grid.
const BOUNDARY_MASS_TOL: f64 = 1e-6;
const BOUNDARY_LAYER: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    /// Interior grid points `t₁ … t_{N−1}`.
    pub points: Vec<f64>,
    /// Unit-norm eigenvectors of `u = tⁿR` on `points`.
    pub vectors: Vec<Vec<f64>>,
    /// Mass of each eigenvector in the outer boundary layer.
    pub boundary_mass: Vec<f64>,
}

struct Tridiagonal {
    diag: Vec<f64>,
    off: f64,
}

impl Tridiagonal {
    fn build(p: &ModelParams, l: u32, grid_size: usize, t_max: f64) -> (Self, Vec<f64>) {
        let n = p.n() as f64;
        let ell = l as f64 + p.sigma_bar() as f64 / 2.0;
        let c = ell * (ell + 2.0 * n - 1.0) + n * (n - 1.0);
        let h = t_max / grid_size as f64;
        let points: Vec<f64> = (1..grid_size).map(|i| h * i as f64).collect();
        let diag = points
            .iter()
            .map(|&t| 1.0 / (h * h) + c / (2.0 * t * t) - 1.0 / t)
            .collect();
        (
            Self {
                diag,
                off: -0.5 / (h * h),
            },
            points,
        )
    }

    /// Number of eigenvalues strictly below `x`.
    fn count_below(&self, x: f64) -> usize {
        let b2 = self.off * self.off;
        let mut count = 0;
        let mut d = 1.0;
        for (i, &a) in self.diag.iter().enumerate() {
            d = if i == 0 { a - x } else { a - x - b2 / d };
            if d == 0.0 {
                d = -f64::EPSILON * (a.abs() + self.off.abs());
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let r = 2.0 * self.off.abs();
        let lo = self.diag.iter().cloned().fold(f64::INFINITY, f64::min) - r;
        let hi = self.diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + r;
        (lo, hi)
    }

    /// The `index`-th smallest eigenvalue (0-based).
    fn eigenvalue(&self, index: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 4.0 * f64::EPSILON * mid.abs().max(1e-300) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Solves `(T − σI) y = rhs` by the Thomas algorithm.
    fn solve_shifted(&self, sigma: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        let b = self.off;
        let mut c_prime = vec![0.0; n];
        let mut d_prime = vec![0.0; n];
        let mut denom = self.diag[0] - sigma;
        c_prime[0] = b / denom;
        d_prime[0] = rhs[0] / denom;
        for i in 1..n {
            denom = self.diag[i] - sigma - b * c_prime[i - 1];
            if denom == 0.0 {
                denom = f64::EPSILON;
            }
            c_prime[i] = b / denom;
            d_prime[i] = (rhs[i] - b * d_prime[i - 1]) / denom;
        }
        let mut y = vec![0.0; n];
        y[n - 1] = d_prime[n - 1];
        for i in (0..n - 1).rev() {
            y[i] = d_prime[i] - c_prime[i] * y[i + 1];
        }
        y
    }

    fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.diag.len();
        let sigma = lambda + 1e-10 * lambda.abs().max(1e-8);
        let mut y = vec![1.0 / (n as f64).sqrt(); n];
        for _ in 0..4 {
            y = self.solve_shifted(sigma, &y);
            let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            y.iter_mut().for_each(|v| *v /= norm);
        }
        y
    }
}

fn validate(grid_size: usize, t_max: f64, count: usize) -> Result<()> {
    if grid_size < MIN_GRID_SIZE {
        return Err(Error::InsufficientGrid {
            size: grid_size,
            min: MIN_GRID_SIZE,
        });
    }
    if count == 0 || count > MAX_COUNT {
        return Err(Error::InvalidParameter(format!(
            "count must be in 1..={MAX_COUNT}, got {count}"
        )));
    }
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    Ok(())
}

/// Lowest `count` eigenvalues and eigenvectors of channel `l`; fails with
/// [`Error::TMaxTooSmall`] if any requested eigenvector leaks more than
/// `1e−6` of its mass into the outer tenth of the grid.
pub fn eigensolve_detailed(
    p: &ModelParams,
    l: u32,
    grid_size: usize,
    t_max: f64,
    count: usize,
) -> Result<Eigenpairs> {
    validate(grid_size, t_max, count)?;
    let (matrix, points) = Tridiagonal::build(p, l, grid_size, t_max);
    let layer_start = ((1.0 - BOUNDARY_LAYER) * points.len() as f64) as usize;
    let mut out = Eigenpairs {
        values: Vec::with_capacity(count),
        points,
        vectors: Vec::with_capacity(count),
        boundary_mass: Vec::with_capacity(count),
    };
    for index in 0..count {
        let value = matrix.eigenvalue(index);
        let vector = matrix.eigenvector(value);
        let mass: f64 = vector[layer_start..].iter().map(|v| v * v).sum();
        if mass > BOUNDARY_MASS_TOL {
            return Err(Error::TMaxTooSmall { t_max, mass });
        }
        out.values.push(value);
        out.vectors.push(vector);
        out.boundary_mass.push(mass);
    }
    Ok(out)
}

/// Lowest `count` eigenvalues of the `t`-equation in channel `(l, σ̄)`.
pub fn eigensolve(p: &ModelParams, l: u32, grid_size: usize, t_max: f64, count: usize) -> Result<Vec<f64>> {
    eigensolve_detailed(p, l, grid_size, t_max, count).map(|e| e.values)
}

/// Number of negative eigenvalues of the discretised channel.
pub fn bound_state_count(p: &ModelParams, l: u32, grid_size: usize, t_max: f64) -> Result<usize> {
    validate(grid_size, t_max, 1)?;
    let (matrix, _) = Tridiagonal::build(p, l, grid_size, t_max);
    Ok(matrix.count_below(0.0))
}

/// A box size that holds the `count` lowest states of channel `l`: the
/// outermost one peaks near `t ≈ ν²` and decays like `t^ν e^{−t/ν}`.
pub fn suggested_t_max(p: &ModelParams, l: u32, count: usize) -> f64 {
    let nu = count as f64 + l as f64 + p.sigma_bar() as f64 / 2.0 + p.n() as f64 - 1.0;
    4.0 * nu * nu + 12.0 * nu
}
