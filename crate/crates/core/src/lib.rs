//! Cauchy-type curvature integrals on planar curves and hypersurfaces.
//!
//! The planar side integrates `1/(z-ζ)^2` against `dζ`, `|dζ|` or a weighted
//! arclength `dα`; the `R^n` side uses the Clifford-algebra Cauchy kernel
//! `E(x) = sum_j x_j e_j / |x|^n` and its derivatives over meshed surfaces.

pub mod analysis;
pub mod clifford;
pub mod error;
pub mod field;
pub mod geometry;
pub mod plane;
pub mod scene;
pub mod verify;

pub use error::{Error, Result};
