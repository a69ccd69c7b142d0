use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("matrix must be square of order {expected}, got {rows}x{cols}")]
    WrongOrder {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("base vector must be nonzero")]
    ZeroBase,

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not symplectic-unitary (max deviation {deviation:e})")]
    NotSymplectic { deviation: f64 },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("weight {weight} is not dominant for {root_system}")]
    NonDominant { weight: String, root_system: String },

    #[error("weight {weight} is not integral for {root_system}")]
    NonIntegral { weight: String, root_system: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coordinate must be positive, got {0}")]
    NonPositiveCoordinate(f64),

    #[error("grid of {size} points is too coarse (need at least {min})")]
    InsufficientGrid { size: usize, min: usize },

    #[error("t_max = {t_max} too small: {mass:.3e} of an eigenvector lies in the outer boundary layer")]
    TMaxTooSmall { t_max: f64, mass: f64 },

    #[error("quadrature under-resolved: Gram entries move by {deviation:e} under refinement")]
    UnderResolved { deviation: f64 },
}
