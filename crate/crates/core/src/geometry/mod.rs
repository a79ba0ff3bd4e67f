//! Integration domains and the quadrature that runs over them.

pub mod curve;
pub mod mesh;
pub mod quadrature;

pub use curve::{CurvePiece, PieceKind, PiecePoint, PlaneCurve, MIN_CURVE_DISTANCE};
pub use mesh::{mesh_box, mesh_flat_patch, mesh_sphere, Hypersurface, SurfaceElement};
pub use quadrature::{integrate_adaptive, GaussLegendre, Integral, QuadratureSpec};
