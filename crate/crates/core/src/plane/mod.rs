//! Planar integrals `int_Γ (z-ζ)^-2 dμ(ζ)` with `C` identified with `R^2`.
//!
//! Three measures are supported: the complex form `dζ`, arclength `|dζ|`, and
//! weighted arclength `dα = ρ |dζ|` with a constant density per piece. With
//! `dζ` the integral over a closed curve vanishes; with `|dζ|` or `dα` it picks
//! up the turning of the tangent and jumps in density as simple poles at the
//! vertices.
//!
//! On the unit circle `|dζ| = dζ / (iζ)`, so the circle integral against
//! `dζ/ζ` (see [`circle_weighted_closed_form`]) is `i` times the arclength one.

mod closed_form;
mod residue;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{integrate_adaptive, PiecePoint, PlaneCurve, QuadratureSpec};

pub use closed_form::{
    analytic_residue, circle_weighted_closed_form, corner_closed_form, ray_closed_form, segment_closed_form,
    segment_closed_form_with, unit_tangent_reciprocal, CornerSpec, CornerValue, RayFan,
};
pub use residue::{residue_fit, ResidueFit};

/// Element of integration along the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    /// `dζ`
    #[serde(rename = "complex")]
    ComplexForm,
    /// `|dζ|`
    Arclength,
    /// `ρ |dζ|` with the density of each piece
    #[default]
    Weighted,
}

impl MeasureKind {
    /// Measure per unit curve parameter.
    pub fn element(self, p: &PiecePoint) -> Complex64 {
        match self {
            MeasureKind::ComplexForm => p.d_zeta,
            MeasureKind::Arclength => Complex64::new(p.speed, 0.0),
            MeasureKind::Weighted => Complex64::new(p.density * p.speed, 0.0),
        }
    }

    /// Total variation of [`MeasureKind::element`]: the positive measure it is
    /// dominated by.
    pub fn mass_element(self, p: &PiecePoint) -> f64 {
        match self {
            MeasureKind::ComplexForm | MeasureKind::Arclength => p.speed,
            MeasureKind::Weighted => p.density * p.speed,
        }
    }
}

/// Sums an integrand over every piece of the curve after checking that `z`
/// is off the curve.
pub fn integrate_curve<F>(curve: &PlaneCurve, z: Complex64, spec: &QuadratureSpec, f: F) -> Result<Complex64>
where
    F: Fn(&PiecePoint) -> Complex64,
{
    curve.check_off_curve(z)?;
    curve
        .pieces()
        .iter()
        .map(|piece| integrate_adaptive(piece, Some(z), spec, &f).map(|r| r.value))
        .sum()
}

/// `int_Γ (z-ζ)^-2 dμ(ζ)`.
pub fn cauchy_squared(curve: &PlaneCurve, measure: MeasureKind, z: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    integrate_curve(curve, z, spec, |p| {
        let d = z - p.position;
        measure.element(p) / (d * d)
    })
}

/// `int_Γ |z-ζ|^-2 dα(ζ)`, comparable to `1/dist(z, Γ)`.
pub fn mass_integral(curve: &PlaneCurve, z: Complex64, spec: &QuadratureSpec) -> Result<f64> {
    mass_integral_with(curve, z, MeasureKind::Weighted, spec)
}

/// Mass integral against the positive measure underlying `measure`.
pub fn mass_integral_with(curve: &PlaneCurve, z: Complex64, measure: MeasureKind, spec: &QuadratureSpec) -> Result<f64> {
    integrate_curve(curve, z, spec, |p| {
        Complex64::new(measure.mass_element(p) / (z - p.position).norm_sqr(), 0.0)
    })
    .map(|v| v.re)
}

/// `|cauchy_squared| / mass`, in `[0, 1]`. Small values mean the curve (with its
/// density) looks flat from `z`.
pub fn flatness_ratio(curve: &PlaneCurve, z: Complex64, measure: MeasureKind, spec: &QuadratureSpec) -> Result<f64> {
    let numerator = cauchy_squared(curve, measure, z, spec)?.norm();
    let denominator = mass_integral_with(curve, z, measure, spec)?;
    Ok(numerator / denominator)
}

/// Quadrature of `int_Γ (z-ζ)^-2 ζ^-1 dζ`, the numeric counterpart of
/// [`circle_weighted_closed_form`] on any curve avoiding the origin.
pub fn inverse_weighted_integral(curve: &PlaneCurve, z: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    integrate_curve(curve, z, spec, |p| {
        let d = z - p.position;
        p.d_zeta / (p.position * d * d)
    })
}
