use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{cauchy_squared, MeasureKind};
use crate::error::{Error, Result};
use crate::geometry::{PlaneCurve, QuadratureSpec};

/// Outcome of a numeric residue fit at a vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueFit {
    /// Fitted coefficient of `1/(z-q)`.
    pub coefficient: Complex64,
    pub radius: f64,
    /// RMS misfit of the model over the samples.
    pub rms_residual: f64,
}

/// Fits `F(z) ≈ c/(z-q) + sum_k a_k (z-q)^k` to the curve's integral sampled
/// on a small circle around the vertex `q`, and returns `c`.
///
/// The circle radius is `residue_radius_fraction` times the distance from `q`
/// to the rest of the geometry. The angular offset of the samples is chosen to
/// stay as far as possible from the pieces leaving `q`.
pub fn residue_fit(curve: &PlaneCurve, q: Complex64, measure: MeasureKind, spec: &QuadratureSpec) -> Result<ResidueFit> {
    spec.validate()?;
    if !curve.is_vertex(q) {
        return Err(Error::NotMarkedPoint { point: q });
    }
    let radius = spec.residue_radius_fraction * curve.local_scale(q);
    let m = spec.residue_angles;
    let step = TAU / m as f64;
    let directions: Vec<f64> = curve.directions_at(q).iter().map(|d| d.arg()).collect();

    let clearance = |offset: f64| {
        directions
            .iter()
            .map(|&d| {
                // angular distance to the nearest sample on the lattice offset + k*step
                let x = (d - offset).rem_euclid(step);
                x.min(step - x)
            })
            .fold(PI, f64::min)
    };
    let offset = (0..8)
        .map(|k| k as f64 * step / 8.0)
        .max_by(|a, b| clearance(*a).total_cmp(&clearance(*b)))
        .unwrap_or(0.0);

    // c/(z-q) plus a polynomial of degree `m/2 - 2`: on the circle these are
    // distinct Fourier modes well below the aliasing limit.
    let degree = (m / 2).saturating_sub(2);
    let unknowns = degree + 2;
    let mut a = DMatrix::<Complex64>::zeros(m, unknowns);
    let mut rhs = DVector::<Complex64>::zeros(m);
    for k in 0..m {
        let w = Complex64::from_polar(radius, offset + k as f64 * step);
        let z = q + w;
        rhs[k] = cauchy_squared(curve, measure, z, spec)?;
        a[(k, 0)] = w.inv();
        let mut power = Complex64::new(1.0, 0.0);
        for j in 0..=degree {
            a[(k, j + 1)] = power;
            power *= w;
        }
    }
    let svd = a.clone().svd(true, true);
    let solution = svd
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::Domain(format!("residue least squares failed: {e}")))?;
    let misfit = &a * &solution - &rhs;
    let rms = (misfit.iter().map(|v| v.norm_sqr()).sum::<f64>() / m as f64).sqrt();
    Ok(ResidueFit {
        coefficient: solution[0],
        radius,
        rms_residual: rms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{unit_tangent_reciprocal, CornerSpec, RayFan};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn corner_residue() {
        let corner = CornerSpec::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0)).unwrap();
        let curve = corner.to_curve(1.0).unwrap();
        let fit = residue_fit(&curve, corner.p, MeasureKind::Arclength, &QuadratureSpec::default()).unwrap();
        let expected = c(1.0, 1.0);
        assert!((fit.coefficient - expected).norm() <= 1e-4 * expected.norm(), "{fit:?}");
    }

    #[test]
    fn balanced_fan_has_no_residue() {
        let fan = RayFan::from_angles(c(0.0, 0.0), &[0.0, TAU / 3.0, 2.0 * TAU / 3.0], 1.0).unwrap();
        let curve = fan.to_curve().unwrap();
        let fit = residue_fit(&curve, fan.apex(), MeasureKind::Weighted, &QuadratureSpec::default()).unwrap();
        assert!(fit.coefficient.norm() <= 1e-6, "{fit:?}");
    }

    #[test]
    fn segment_endpoints() {
        let (a, b) = (c(0.0, 0.0), c(1.0, 2.0));
        let curve = PlaneCurve::polyline(&[a, b], 1.0).unwrap();
        let u = unit_tangent_reciprocal(a, b);
        let spec = QuadratureSpec::default();
        let at_a = residue_fit(&curve, a, MeasureKind::Arclength, &spec).unwrap();
        assert!((at_a.coefficient + u).norm() <= 1e-4, "{at_a:?}");
        let at_b = residue_fit(&curve, b, MeasureKind::Arclength, &spec).unwrap();
        assert!((at_b.coefficient - u).norm() <= 1e-4, "{at_b:?}");
    }

    #[test]
    fn unmarked_point_rejected() {
        let curve = PlaneCurve::polyline(&[c(0.0, 0.0), c(1.0, 0.0)], 1.0).unwrap();
        let err = residue_fit(&curve, c(0.5, 0.0), MeasureKind::Arclength, &QuadratureSpec::default());
        assert!(matches!(err, Err(Error::NotMarkedPoint { .. })));
    }
}
