use serde::{Deserialize, Serialize};

use super::jet::Jet;
use super::laguerre::{laguerre, laguerre_derivative, laguerre_second_derivative};
use super::{RadialGrid, RadialState};
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::spectral::{ModelParams, QuantumNumbers};

const PANEL_NODES: usize = 16;
const NORM_NODES: usize = 4096;

/// Scale of the map `t = scale·s/(1−s)`: roughly the mean of `t` under the
/// state's density.
fn t_scale(s: &RadialState) -> f64 {
    let a = s.laguerre_index() as f64;
    let m = s.laguerre_degree() as f64;
    (0.5 * s.nu() * (a + 2.0 * m + 2.0)).max(1.0)
}

/// `∫₀^∞ f(t) dt` by composite Gauss–Legendre on `s ∈ [0, 1)` after
/// `t = scale·s/(1−s)`.
fn t_integral(scale: f64, nodes: usize, f: impl Fn(f64) -> f64) -> f64 {
    let panels = nodes.div_ceil(PANEL_NODES).max(1);
    GaussLegendre::new(PANEL_NODES)
        .composite_points(0.0, 1.0, panels)
        .into_iter()
        .map(|(s, w)| {
            let one_minus = 1.0 - s;
            let t = scale * s / one_minus;
            let jac = scale / (one_minus * one_minus);
            w * jac * f(t)
        })
        .sum()
}

/// `∫₀^∞ f(t) g(t) t^{2n} dt` with about `nodes` quadrature points.
pub fn t_inner_product(
    f: impl Fn(f64) -> f64,
    g: impl Fn(f64) -> f64,
    n: u32,
    scale: f64,
    nodes: usize,
) -> f64 {
    let p = 2 * n as i32;
    t_integral(scale, nodes, |t| f(t) * g(t) * t.powi(p))
}

/// `t^ℓ L^a_m(2t/ν) e^{−t/ν}`; power and exponential are combined in log
/// space so the far tail underflows to 0 instead of producing `inf·0`.
fn radial_t_raw(s: &RadialState, t: f64) -> f64 {
    let nu = s.nu();
    let envelope = (s.ell() * t.ln() - t / nu).exp();
    envelope * laguerre(s.laguerre_index() as f64, s.laguerre_degree(), 2.0 * t / nu)
}

pub(super) fn normalization_constant(s: &RadialState) -> f64 {
    let norm2 = t_inner_product(
        |t| radial_t_raw(s, t),
        |t| radial_t_raw(s, t),
        s.n(),
        t_scale(s),
        NORM_NODES,
    );
    1.0 / norm2.sqrt()
}

fn positive(x: f64) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveCoordinate(x))
    }
}

/// `R(t) = c·t^ℓ·L^a_m(2t/ν)·e^{−t/ν}`; with `normalized`, `∫ R² t^{2n} dt = 1`,
/// otherwise `c = 1`.
pub fn radial_t(s: &RadialState, t: f64, normalized: bool) -> Result<f64> {
    positive(t)?;
    let c = if normalized { s.norm_t() } else { 1.0 };
    Ok(c * radial_t_raw(s, t))
}

/// `R̃(ρ) = c·ρ^{2l+σ̄+5/2}·L^a_m(2ρ²/ν)·e^{−ρ²/ν}`.
///
/// Unnormalised, `R̃(ρ) = ρ^{5/2} R(ρ²)` holds with the same constant.
/// Normalised against `ρ^{4n−4} dρ` the constant is `√2` times the
/// `t`-form one, since `∫ R̃² ρ^{4n−4} dρ = ½ ∫ R² t^{2n} dt`.
pub fn radial_rho(s: &RadialState, rho: f64, normalized: bool) -> Result<f64> {
    positive(rho)?;
    let c = if normalized {
        std::f64::consts::SQRT_2 * s.norm_t()
    } else {
        1.0
    };
    Ok(c * rho.powf(2.5) * radial_t_raw(s, rho * rho))
}

fn radial_t_jet(s: &RadialState, t: f64) -> Jet {
    let nu = s.nu();
    let (a, m) = (s.laguerre_index() as f64, s.laguerre_degree());
    let x = 2.0 * t / nu;
    let lag = Jet::new(
        laguerre(a, m, x),
        2.0 / nu * laguerre_derivative(a, m, x),
        4.0 / (nu * nu) * laguerre_second_derivative(a, m, x),
    );
    Jet::power(t, s.ell()) * lag * Jet::exp_poly(t, -1.0 / nu, 1)
}

/// [`kepler_residual`] with the Coulomb term scaled by `coupling`
/// (`coupling = 1` is the physical operator).
pub fn kepler_residual_with_coupling(s: &RadialState, grid: &RadialGrid, coupling: f64) -> f64 {
    let n2 = 2.0 * s.n() as f64;
    let ell = s.ell();
    let centrifugal = ell * ell + (n2 - 1.0) * ell;
    let e = s.energy();
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &t in grid.points() {
        let r = radial_t_jet(s, t);
        let lr = -0.5 * (r.d2 + n2 / t * r.d1) + centrifugal / (2.0 * t * t) * r.v - coupling * r.v / t;
        worst = worst.max((lr - e * r.v).abs());
        scale = scale.max(r.v.abs());
    }
    worst / scale
}

/// `max_t |(L R)(t) − E R(t)| / max_t |R(t)|` for the `t`-equation
/// `L = −(1/2t^{2n}) ∂ t^{2n} ∂ + (ℓ² + (2n−1)ℓ)/(2t²) − 1/t`, using exact
/// Laguerre derivatives.
pub fn kepler_residual(s: &RadialState, grid: &RadialGrid) -> f64 {
    kepler_residual_with_coupling(s, grid, 1.0)
}

fn oscillator_jet(s: &RadialState, r: f64) -> Jet {
    let (a, m) = (s.laguerre_index() as f64, s.laguerre_degree());
    let x = r * r;
    let d1 = laguerre_derivative(a, m, x);
    let lag = Jet::new(
        laguerre(a, m, x),
        2.0 * r * d1,
        2.0 * d1 + 4.0 * x * laguerre_second_derivative(a, m, x),
    );
    Jet::power(r, s.two_ell() as f64) * lag * Jet::exp_poly(r, -0.5, 2)
}

/// `f(r) = r^L·L^{L+2n−1}_{k−1}(r²)·e^{−r²/2}` with `L = 2l + σ̄`.
pub fn oscillator_profile(s: &RadialState, r: f64) -> Result<f64> {
    positive(r)?;
    Ok(oscillator_jet(s, r).v)
}

/// The twist of the `ρ`-form: `r^{−5/2}·R̃(√(ν/2)·r)`, unnormalised.
pub fn twisted_radial(s: &RadialState, r: f64) -> Result<f64> {
    positive(r)?;
    let rho = (s.nu() / 2.0).sqrt() * r;
    Ok(radial_rho(s, rho, false)? / r.powf(2.5))
}

/// `−½(f″ + (4n−1)/r·f′ − L(L+4n−2)/r²·f) + ½r²·f`.
fn oscillator_apply(s: &RadialState, r: f64) -> (f64, f64) {
    let f = oscillator_jet(s, r);
    let dim = 4.0 * s.n() as f64;
    let big_l = s.two_ell() as f64;
    let hf = -0.5 * (f.d2 + (dim - 1.0) / r * f.d1 - big_l * (big_l + dim - 2.0) / (r * r) * f.v)
        + 0.5 * r * r * f.v;
    (hf, f.v)
}

/// Max relative residual of the oscillator equation with eigenvalue
/// `2I + σ̄ + 2n`.
pub fn oscillator_residual(s: &RadialState, grid: &RadialGrid) -> f64 {
    let lambda = s.oscillator_eigenvalue() as f64;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &r in grid.points() {
        let (hf, f) = oscillator_apply(s, r);
        worst = worst.max((hf - lambda * f).abs());
        scale = scale.max(f.abs());
    }
    worst / scale
}

/// Least-squares `λ` minimising `Σ (Hf − λf)²` over the grid.
pub fn oscillator_eigenvalue_readback(s: &RadialState, grid: &RadialGrid) -> f64 {
    let (num, den) = grid.points().iter().fold((0.0, 0.0), |(num, den), &r| {
        let (hf, f) = oscillator_apply(s, r);
        (num + hf * f, den + f * f)
    });
    num / den
}

/// Mean and population variance of `oscillator_profile / twisted_radial`
/// over the grid, skipping points where the twisted value is below `1e−8`
/// of its maximum (near Laguerre nodes the ratio is `0/0`).
pub fn twist_ratio_stats(s: &RadialState, grid: &RadialGrid) -> Result<(f64, f64)> {
    let pairs: Vec<(f64, f64)> = grid
        .points()
        .iter()
        .map(|&r| Ok((oscillator_profile(s, r)?, twisted_radial(s, r)?)))
        .collect::<Result<_>>()?;
    let peak = pairs.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    let ratios: Vec<f64> = pairs
        .iter()
        .filter(|p| p.1.abs() > 1e-8 * peak)
        .map(|p| p.0 / p.1)
        .collect();
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let var = ratios.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / ratios.len() as f64;
    Ok((mean, var))
}

/// Variance part of [`twist_ratio_stats`].
pub fn twist_ratio_variance(s: &RadialState, grid: &RadialGrid) -> Result<f64> {
    twist_ratio_stats(s, grid).map(|(_, var)| var)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialForm {
    T,
    Rho,
    Oscillator,
}

/// Sign changes of the chosen form on a fine scan covering every Laguerre
/// root.
pub fn node_count(s: &RadialState, form: RadialForm) -> usize {
    let (a, m) = (s.laguerre_index() as f64, s.laguerre_degree() as f64);
    let x_max = 4.0 * m + 2.0 * a + 20.0;
    let samples = 20_000;
    let nu = s.nu();
    let mut changes = 0;
    let mut last_sign = 0.0;
    for i in 1..=samples {
        let x = x_max * i as f64 / samples as f64;
        let v = match form {
            RadialForm::T => radial_t(s, x * nu / 2.0, false),
            RadialForm::Rho => radial_rho(s, (x * nu / 2.0).sqrt(), false),
            RadialForm::Oscillator => oscillator_profile(s, x.sqrt()),
        }
        .expect("scan points are positive");
        if v == 0.0 {
            continue;
        }
        let sign = v.signum();
        if last_sign != 0.0 && sign != last_sign {
            changes += 1;
        }
        last_sign = sign;
    }
    changes
}

/// Square matrix of inner products.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub size: usize,
    pub entries: Vec<f64>,
}

impl GramMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn max_deviation_from_identity(&self) -> f64 {
        (0..self.size)
            .flat_map(|i| (0..self.size).map(move |j| (i, j)))
            .map(|(i, j)| (self.get(i, j) - if i == j { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max)
    }
}

fn gram(states: &[RadialState], n: u32, scale: f64, nodes: usize) -> GramMatrix {
    let size = states.len();
    let mut entries = vec![0.0; size * size];
    for i in 0..size {
        for j in 0..size {
            entries[i * size + j] = t_inner_product(
                |t| radial_t(&states[i], t, true).unwrap_or(0.0),
                |t| radial_t(&states[j], t, true).unwrap_or(0.0),
                n,
                scale,
                nodes,
            );
        }
    }
    GramMatrix { size, entries }
}

/// Gram matrix of the normalised states `k = 1..=k_max` of channel `l` in
/// `L²(t^{2n} dt)`, computed with about `quadrature` nodes. The same matrix
/// is recomputed with twice the nodes; if any entry moves by more than
/// `1e−10` the quadrature is reported as under-resolved.
pub fn orthogonality_check(p: &ModelParams, l: u32, k_max: u32, quadrature: usize) -> Result<GramMatrix> {
    if k_max == 0 || k_max > 8 {
        return Err(Error::InvalidParameter(format!(
            "k_max must be in 1..=8, got {k_max}"
        )));
    }
    let states: Vec<RadialState> = (1..=k_max)
        .map(|k| Ok(RadialState::new(*p, QuantumNumbers::new(k, l)?)))
        .collect::<Result<_>>()?;
    let scale = states.iter().map(t_scale).fold(1.0, f64::max);
    let coarse = gram(&states, p.n(), scale, quadrature);
    let fine = gram(&states, p.n(), scale, 2 * quadrature);
    let deviation = coarse
        .entries
        .iter()
        .zip(&fine.entries)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if deviation > 1e-10 {
        return Err(Error::UnderResolved { deviation });
    }
    Ok(fine)
}
