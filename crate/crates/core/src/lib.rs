//! Bound-state spectra, degeneracies, K-type weights and radial
//! wavefunctions of the Sp(1)-Kepler problems, together with exact and
//! residual-based checks of the identities behind them.
//!
//! Module map:
//!
//! * [`qlinalg`]: quaternion scalars, vectors and matrices.
//! * [`geom`]: metric identities on `ℍⁿ` and the `O*(4n)` matrix relations.
//! * [`rep`]: Weyl dimensions, Casimir values, `Sp(1)` characters.
//! * [`spectral`]: energies, degeneracies, the oscillator dimension equality
//!   and K-type bookkeeping, all in exact arithmetic.
//! * [`radial`]: Laguerre machinery, closed-form radial states, ODE
//!   residuals, a tridiagonal eigensolver, the twist to the oscillator and
//!   the five-dimensional MICZ equivalence.
//! * [`verify`]: parameter sweeps that turn the above into pass/fail checks.
//! * [`cli`]: the command-line front end and report rendering.

// Negated float comparisons are how NaN inputs fail the positivity checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod geom;
pub mod qlinalg;
pub mod quadrature;
pub mod radial;
pub mod rep;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use spectral::{ModelParams, QuantumNumbers};
