//! Clifford analysis in `R^n`: the Cauchy kernel `E`, a finite-difference
//! Dirac operator `D = sum_j e_j ∂_j`, and centroid-rule surface integrals.
//!
//! The kernel is used without the `1/ω_{n-1}` normalization, so the Cauchy
//! integral over a closed surface equals the area of the unit sphere (not 1)
//! at interior points. Coordinate axes are 0-based in this API: axis `m`
//! pairs with the generator `e_{m+1}`.

mod dirac;
mod kernel;
mod surface;

pub use dirac::{
    check_kernel_potential, dirac_apply, dirac_apply_fallible, dirac_squared, kernel_dirac_residual,
    kernel_dirac_residual_y, DiracSpec,
};
pub use kernel::{
    cauchy_kernel, cauchy_kernel_derivative, even_part_to_complex, harmonic_potential, kernel_potential_constant,
};
pub use surface::{surface_cauchy_integral, surface_derivative_integral, SurfaceWeight, SURFACE_PROXIMITY};
