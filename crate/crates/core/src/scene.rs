//! JSON scene files: geometry, an evaluation grid, the integral to sample and
//! quadrature settings.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "curves": [{"closed": true, "pieces": [
//!     {"kind": "arc", "center": [0, 0], "radius": 1, "theta0": 0, "theta1": 6.283185307179586}
//!   ]}],
//!   "grid": {"min": [-2, -2], "max": [2, 2], "counts": [41, 41]},
//!   "integral": {"kind": "circle_weighted"},
//!   "quadrature": {"rel_tol": 1e-10}
//! }
//! ```
//!
//! The README documents every field.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::SurfaceWeight;
use crate::error::{Error, Result};
use crate::geometry::{mesh_box, mesh_flat_patch, mesh_sphere, CurvePiece, Hypersurface, PlaneCurve, QuadratureSpec};
use crate::plane::MeasureKind;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub dim: usize,
    #[serde(default)]
    pub curves: Vec<CurveSpec>,
    #[serde(default)]
    pub surfaces: Vec<SurfaceSpec>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub integral: Option<IntegralSpec>,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default)]
    pub closed: bool,
    pub pieces: Vec<PieceSpec>,
}

fn unit_density() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PieceSpec {
    Segment {
        a: [f64; 2],
        b: [f64; 2],
        #[serde(default = "unit_density")]
        density: f64,
    },
    Arc {
        center: [f64; 2],
        radius: f64,
        theta0: f64,
        theta1: f64,
        #[serde(default = "unit_density")]
        density: f64,
    },
    Ray {
        origin: [f64; 2],
        direction: [f64; 2],
        #[serde(default = "unit_density")]
        density: f64,
    },
    /// Expands to two opposite rays from `point`.
    Line {
        point: [f64; 2],
        direction: [f64; 2],
        #[serde(default = "unit_density")]
        density: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceSpec {
    Sphere {
        center: [f64; 3],
        radius: f64,
        level: u32,
    },
    /// `normal_axis` is 1-based, matching `e_m`.
    FlatPatch {
        normal_axis: usize,
        extent: f64,
        cells: usize,
        #[serde(default = "unit_density")]
        density: f64,
    },
    Box {
        lo: [f64; 3],
        hi: [f64; 3],
        cells: usize,
    },
}

fn default_offset() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    /// Lattice with `counts[j]` points per axis spaced `(max - min) / (count - 1)`,
    /// shifted by half a spacing when `offset_half_cell` is set.
    Lattice {
        min: Vec<f64>,
        max: Vec<f64>,
        counts: Vec<usize>,
        #[serde(default = "default_offset")]
        offset_half_cell: bool,
    },
    Points {
        points: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IntegralSpec {
    CauchySquared {
        #[serde(default)]
        measure: MeasureKind,
    },
    Mass {
        #[serde(default)]
        measure: MeasureKind,
    },
    Flatness {
        #[serde(default)]
        measure: MeasureKind,
    },
    /// `int (z-ζ)^-2 ζ^-1 dζ`
    CircleWeighted,
    SurfaceCauchy,
    /// `axis` is 1-based, matching `e_m`.
    SurfaceDerivative { axis: usize, weight: SurfaceWeight },
}

impl IntegralSpec {
    pub fn is_planar(&self) -> bool {
        !matches!(self, IntegralSpec::SurfaceCauchy | IntegralSpec::SurfaceDerivative { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            IntegralSpec::CauchySquared { .. } => "cauchy_squared",
            IntegralSpec::Mass { .. } => "mass",
            IntegralSpec::Flatness { .. } => "flatness",
            IntegralSpec::CircleWeighted => "circle_weighted",
            IntegralSpec::SurfaceCauchy => "surface_cauchy",
            IntegralSpec::SurfaceDerivative { .. } => "surface_derivative",
        }
    }

    pub fn measure(&self) -> Option<MeasureKind> {
        match *self {
            IntegralSpec::CauchySquared { measure }
            | IntegralSpec::Mass { measure }
            | IntegralSpec::Flatness { measure } => Some(measure),
            _ => None,
        }
    }
}

fn c(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl Scene {
    pub fn from_json(text: &str) -> Result<Scene> {
        let scene: Scene = serde_json::from_str(text).map_err(|e| {
            Error::Scene(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn load(path: &Path) -> Result<Scene> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Scene(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::Scene(format!("dim must be at least 2, got {}", self.dim)));
        }
        if !self.curves.is_empty() && self.dim != 2 {
            return Err(Error::Scene("curves require dim 2".into()));
        }
        for s in &self.surfaces {
            let needs3 = matches!(s, SurfaceSpec::Sphere { .. } | SurfaceSpec::Box { .. });
            if needs3 && self.dim != 3 {
                return Err(Error::Scene("sphere and box surfaces require dim 3".into()));
            }
        }
        if let Some(GridSpec::Lattice { min, max, counts, .. }) = &self.grid {
            if min.len() != self.dim || max.len() != self.dim || counts.len() != self.dim {
                return Err(Error::Scene(format!("grid.min/max/counts must have {} entries", self.dim)));
            }
            if counts.contains(&0) {
                return Err(Error::Scene("grid.counts entries must be positive".into()));
            }
        }
        if let Some(GridSpec::Points { points }) = &self.grid {
            if points.iter().any(|p| p.len() != self.dim) {
                return Err(Error::Scene(format!("grid.points entries must have {} coordinates", self.dim)));
            }
        }
        if let Some(IntegralSpec::SurfaceDerivative { axis, .. }) = self.integral {
            if axis == 0 || axis > self.dim {
                return Err(Error::Scene(format!("integral.axis must be in 1..={}", self.dim)));
            }
        }
        self.quadrature.validate()
    }

    /// The integral to sample, defaulting to `cauchy_squared` (weighted) in
    /// the plane and `surface_cauchy` otherwise.
    pub fn integral(&self) -> IntegralSpec {
        self.integral.unwrap_or(if self.dim == 2 && !self.curves.is_empty() {
            IntegralSpec::CauchySquared {
                measure: MeasureKind::Weighted,
            }
        } else {
            IntegralSpec::SurfaceCauchy
        })
    }

    pub fn plane_curves(&self) -> Result<Vec<PlaneCurve>> {
        self.curves
            .iter()
            .map(|spec| {
                let mut pieces = Vec::new();
                for piece in &spec.pieces {
                    match *piece {
                        PieceSpec::Segment { a, b, density } => pieces.push(CurvePiece::segment(c(a), c(b), density)?),
                        PieceSpec::Arc {
                            center,
                            radius,
                            theta0,
                            theta1,
                            density,
                        } => pieces.push(CurvePiece::arc(c(center), radius, theta0, theta1, density)?),
                        PieceSpec::Ray {
                            origin,
                            direction,
                            density,
                        } => pieces.push(CurvePiece::ray(c(origin), c(direction), density)?),
                        PieceSpec::Line {
                            point,
                            direction,
                            density,
                        } => {
                            pieces.push(CurvePiece::ray(c(point), c(direction), density)?);
                            pieces.push(CurvePiece::ray(c(point), -c(direction), density)?);
                        }
                    }
                }
                PlaneCurve::new(pieces, spec.closed)
            })
            .collect()
    }

    pub fn hypersurfaces(&self) -> Result<Vec<Hypersurface>> {
        self.surfaces
            .iter()
            .map(|spec| match *spec {
                SurfaceSpec::Sphere { center, radius, level } => mesh_sphere(center, radius, level),
                SurfaceSpec::FlatPatch {
                    normal_axis,
                    extent,
                    cells,
                    density,
                } => {
                    if normal_axis == 0 || normal_axis > self.dim {
                        return Err(Error::Scene(format!("normal_axis must be in 1..={}", self.dim)));
                    }
                    mesh_flat_patch(self.dim, normal_axis - 1, extent, cells, density)
                }
                SurfaceSpec::Box { lo, hi, cells } => mesh_box(lo, hi, cells),
            })
            .collect()
    }

    /// Evaluation points of the grid, in row-major order (last axis fastest).
    pub fn grid_points(&self) -> Result<Vec<Vec<f64>>> {
        match &self.grid {
            None => Err(Error::Scene("scene has no grid".into())),
            Some(GridSpec::Points { points }) => Ok(points.clone()),
            Some(GridSpec::Lattice {
                min,
                max,
                counts,
                offset_half_cell,
            }) => {
                let axes: Vec<Vec<f64>> = (0..self.dim)
                    .map(|j| {
                        let n = counts[j];
                        let spacing = if n > 1 {
                            (max[j] - min[j]) / (n - 1) as f64
                        } else {
                            max[j] - min[j]
                        };
                        let shift = if *offset_half_cell { 0.5 * spacing } else { 0.0 };
                        (0..n).map(|i| min[j] + i as f64 * spacing + shift).collect()
                    })
                    .collect();
                let mut points = vec![Vec::new()];
                for axis in &axes {
                    points = points
                        .into_iter()
                        .flat_map(|prefix| {
                            axis.iter().map(move |&v| {
                                let mut p = prefix.clone();
                                p.push(v);
                                p
                            })
                        })
                        .collect();
                }
                Ok(points)
            }
        }
    }
}
