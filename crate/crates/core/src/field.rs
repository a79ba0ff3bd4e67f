//! Sampling a scene's integral over its grid and writing the result.
//!
//! Plane fields are complex-valued and written as `re_z,im_z,re_val,im_val`.
//! Clifford fields are written as `x1,...,xn,blade,coeff`, one row per
//! nonzero blade (a zero value becomes a single `1,0` row). Points where the
//! integral fails keep their row with `NaN` values and count as warnings.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{surface_cauchy_integral, surface_derivative_integral};
use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::geometry::{Hypersurface, PlaneCurve};
use crate::plane::{cauchy_squared, flatness_ratio, inverse_weighted_integral, mass_integral_with};
use crate::scene::{IntegralSpec, Scene};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldValue {
    Complex(Complex64),
    Clifford(Multivector),
    Failed(String),
}

impl FieldValue {
    pub fn is_failed(&self) -> bool {
        matches!(self, FieldValue::Failed(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelField {
    pub dim: usize,
    pub integral: IntegralSpec,
    pub points: Vec<Vec<f64>>,
    pub values: Vec<FieldValue>,
}

enum Geometry {
    Plane(Vec<PlaneCurve>),
    Surface(Vec<Hypersurface>),
}

fn evaluate_point(scene: &Scene, integral: IntegralSpec, geometry: &Geometry, x: &[f64]) -> Result<FieldValue> {
    match geometry {
        Geometry::Plane(curves) => {
            let z = Complex64::new(x[0], x[1]);
            let spec = &scene.quadrature;
            let mut total = Complex64::new(0.0, 0.0);
            for curve in curves {
                total += match integral {
                    IntegralSpec::CauchySquared { measure } => cauchy_squared(curve, measure, z, spec)?,
                    IntegralSpec::Mass { measure } => mass_integral_with(curve, z, measure, spec)?.into(),
                    IntegralSpec::Flatness { measure } => flatness_ratio(curve, z, measure, spec)?.into(),
                    IntegralSpec::CircleWeighted => inverse_weighted_integral(curve, z, spec)?,
                    _ => unreachable!("surface integral on plane geometry"),
                };
            }
            Ok(FieldValue::Complex(total))
        }
        Geometry::Surface(surfaces) => {
            let mut total = Multivector::zero(scene.dim)?;
            for surface in surfaces {
                total += &match integral {
                    IntegralSpec::SurfaceCauchy => surface_cauchy_integral(surface, x)?,
                    IntegralSpec::SurfaceDerivative { axis, weight } => {
                        surface_derivative_integral(surface, weight, x, axis - 1)?
                    }
                    _ => unreachable!("plane integral on surface geometry"),
                };
            }
            Ok(FieldValue::Clifford(total))
        }
    }
}

/// Evaluates the scene's integral at every grid point. Points are processed
/// in parallel but the output keeps grid order. Per-point failures (a point
/// on the curve, a non-converging integral) are recorded, not propagated.
pub fn evaluate_field(scene: &Scene) -> Result<KernelField> {
    let integral = scene.integral();
    let geometry = if integral.is_planar() {
        if scene.dim != 2 || scene.curves.is_empty() {
            return Err(Error::Scene(format!("integral `{}` needs dim 2 and at least one curve", integral.name())));
        }
        Geometry::Plane(scene.plane_curves()?)
    } else {
        if scene.surfaces.is_empty() {
            return Err(Error::Scene(format!("integral `{}` needs at least one surface", integral.name())));
        }
        Geometry::Surface(scene.hypersurfaces()?)
    };
    let points = scene.grid_points()?;
    let values = points
        .par_iter()
        .map(|x| evaluate_point(scene, integral, &geometry, x).unwrap_or_else(|e| FieldValue::Failed(e.to_string())))
        .collect();
    Ok(KernelField {
        dim: scene.dim,
        integral,
        points,
        values,
    })
}

impl KernelField {
    pub fn failures(&self) -> usize {
        self.values.iter().filter(|v| v.is_failed()).count()
    }

    fn is_complex(&self) -> bool {
        self.integral.is_planar()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        if self.is_complex() {
            writeln!(w, "re_z,im_z,re_val,im_val")?;
            for (p, v) in self.points.iter().zip(&self.values) {
                let (re, im) = match v {
                    FieldValue::Complex(c) => (c.re, c.im),
                    _ => (f64::NAN, f64::NAN),
                };
                writeln!(w, "{},{},{re},{im}", p[0], p[1])?;
            }
        } else {
            let header: Vec<String> = (1..=self.dim).map(|j| format!("x{j}")).collect();
            writeln!(w, "{},blade,coeff", header.join(","))?;
            for (p, v) in self.points.iter().zip(&self.values) {
                let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
                let coords = coords.join(",");
                match v {
                    FieldValue::Clifford(mv) => {
                        let terms: Vec<_> = mv.terms().collect();
                        if terms.is_empty() {
                            writeln!(w, "{coords},1,0")?;
                        }
                        for (blade, coeff) in terms {
                            writeln!(w, "{coords},{blade},{coeff}")?;
                        }
                    }
                    _ => writeln!(w, "{coords},1,NaN")?,
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let records: Vec<Value> = self
            .points
            .iter()
            .zip(&self.values)
            .map(|(p, v)| match v {
                FieldValue::Complex(c) => json!({"point": p, "value": [c.re, c.im]}),
                FieldValue::Clifford(mv) => json!({"point": p, "value": mv}),
                FieldValue::Failed(msg) => json!({"point": p, "error": msg}),
            })
            .collect();
        json!({
            "dim": self.dim,
            "integral": self.integral,
            "failures": self.failures(),
            "records": records,
        })
    }
}
