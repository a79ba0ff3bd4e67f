use num_complex::Complex64;
use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for C({dim})")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported dimension {0} (expected 1..={max})", max = crate::clifford::MAX_DIM)]
    UnsupportedDimension(usize),

    #[error("element is not invertible")]
    NotInvertible,

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid quadrature settings: {0}")]
    InvalidSpec(String),

    #[error("evaluation point ({re}, {im}) lies on the curve (distance {distance:e})", re = point.re, im = point.im)]
    PointOnCurve { point: Complex64, distance: f64 },

    #[error("evaluation point too close to the surface (distance {distance:e}, limit {limit:e})")]
    TooCloseToSurface { distance: f64, limit: f64 },

    #[error("kernel evaluated at its singularity")]
    Singularity,

    #[error("quadrature did not converge: estimate ({re}, {im}), error bound {error_bound:e}", re = estimate.re, im = estimate.im)]
    ConvergenceFailure {
        estimate: Complex64,
        error_bound: f64,
    },

    #[error("point ({re}, {im}) is not a vertex of the curve", re = point.re, im = point.im)]
    NotMarkedPoint { point: Complex64 },

    #[error("refinement level {level} exceeds the limit of {max}")]
    ResourceLimit { level: u32, max: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("scene error: {0}")]
    Scene(String),
}

pub type Result<T> = std::result::Result<T, Error>;
