use serde::{Deserialize, Serialize};

use super::kernel::{cauchy_kernel, cauchy_kernel_derivative};
use crate::clifford::{CliffordVector, Multivector};
use crate::error::{Error, Result};
use crate::geometry::Hypersurface;

/// Points closer than this fraction of the surface diameter are rejected.
pub const SURFACE_PROXIMITY: f64 = 1e-6;

/// Element of integration for surface integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceWeight {
    /// `N(y) dy`, the Clifford-valued normal element.
    Normal,
    /// `dα(y) = density dy`, a positive scalar element.
    Density,
}

fn check_point(surface: &Hypersurface, x: &[f64]) -> Result<()> {
    if x.len() != surface.dim() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: surface.dim(),
        });
    }
    let limit = SURFACE_PROXIMITY * surface.diameter();
    let distance = surface.distance_lower_bound(x);
    if !(distance > limit) {
        return Err(Error::TooCloseToSurface { distance, limit });
    }
    Ok(())
}

/// Centroid rule for `int_Γ E(x - y) N(y) dy`, kernel on the left.
///
/// For a closed outward-oriented surface this is locally constant off the
/// surface: the surface area of the unit sphere (`4π` in `R^3`) inside, zero
/// outside.
pub fn surface_cauchy_integral(surface: &Hypersurface, x: &[f64]) -> Result<Multivector> {
    check_point(surface, x)?;
    let mut total = Multivector::zero(surface.dim())?;
    for e in surface.elements() {
        let kernel = cauchy_kernel(x, &e.centroid)?.to_multivector();
        let normal = CliffordVector::new(e.normal.clone())?.to_multivector();
        total += &kernel.product(&normal)?.scale(e.area);
    }
    Ok(total)
}

/// Centroid rule for `int_Γ ∂/∂x_axis E(x - y) w(y)` with `w` either
/// `N(y) dy` or `density dy`. `axis` is 0-based.
pub fn surface_derivative_integral(
    surface: &Hypersurface,
    weight: SurfaceWeight,
    x: &[f64],
    axis: usize,
) -> Result<Multivector> {
    check_point(surface, x)?;
    let mut total = Multivector::zero(surface.dim())?;
    for e in surface.elements() {
        let kernel = cauchy_kernel_derivative(x, &e.centroid, axis)?.to_multivector();
        let term = match weight {
            SurfaceWeight::Normal => {
                let normal = CliffordVector::new(e.normal.clone())?.to_multivector();
                kernel.product(&normal)?.scale(e.area)
            }
            SurfaceWeight::Density => kernel.scale(e.density * e.area),
        };
        total += &term;
    }
    Ok(total)
}
