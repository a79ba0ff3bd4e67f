//! Closed forms for straight pieces, corners, rays and the unit circle.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::MeasureKind;
use crate::error::{Error, Result};
use crate::geometry::{CurvePiece, PieceKind, PlaneCurve, MIN_CURVE_DISTANCE};

fn on_segment(z: Complex64, a: Complex64, b: Complex64) -> bool {
    let d = b - a;
    let t = (((z - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    (z - (a + d * t)).norm() <= MIN_CURVE_DISTANCE
}

/// `|b - a| / (b - a)`: the constant with `|dζ| = c dζ` along the segment from `a` to `b`.
pub fn unit_tangent_reciprocal(a: Complex64, b: Complex64) -> Complex64 {
    let d = b - a;
    Complex64::new(d.norm(), 0.0) / d
}

/// `int_{[a,b]} (z-ζ)^-2 dζ = 1/(z-b) - 1/(z-a)`, valid for any path from `a` to `b`.
pub fn segment_closed_form(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    if a == b {
        return Err(Error::InvalidGeometry("segment endpoints coincide".into()));
    }
    if on_segment(z, a, b) {
        return Err(Error::PointOnCurve {
            point: z,
            distance: 0.0,
        });
    }
    Ok((z - b).inv() - (z - a).inv())
}

/// The segment integral under `measure`, with constant `density` used by
/// [`MeasureKind::Weighted`].
pub fn segment_closed_form_with(
    a: Complex64,
    b: Complex64,
    z: Complex64,
    measure: MeasureKind,
    density: f64,
) -> Result<Complex64> {
    let base = segment_closed_form(a, b, z)?;
    Ok(match measure {
        MeasureKind::ComplexForm => base,
        MeasureKind::Arclength => base * unit_tangent_reciprocal(a, b),
        MeasureKind::Weighted => base * unit_tangent_reciprocal(a, b) * density,
    })
}

/// Two segments `a -> p -> b` meeting at a corner `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerSpec {
    pub a: Complex64,
    pub p: Complex64,
    pub b: Complex64,
}

impl CornerSpec {
    pub fn new(a: Complex64, p: Complex64, b: Complex64) -> Result<Self> {
        if a == p || p == b || a == b {
            return Err(Error::InvalidGeometry("corner points must be distinct".into()));
        }
        if on_segment(p, a, b) {
            return Err(Error::InvalidGeometry("corner vertex lies on the segment [a, b]".into()));
        }
        Ok(Self { a, p, b })
    }

    pub fn to_curve(&self, density: f64) -> Result<PlaneCurve> {
        PlaneCurve::polyline(&[self.a, self.p, self.b], density)
    }

    /// Interior angle at `p` between the two segments, in `(0, π]`.
    pub fn angle(&self) -> f64 {
        ((self.a - self.p) / (self.b - self.p)).arg().abs()
    }
}

/// Arclength integral over a corner, split into its two tangent constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerValue {
    pub value: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
}

impl CornerValue {
    /// Coefficient of `1/(z-p)`.
    pub fn residue(&self) -> Complex64 {
        self.c1 - self.c2
    }
}

/// `c1 (1/(z-p) - 1/(z-a)) + c2 (1/(z-b) - 1/(z-p))` with
/// `c1 = |p-a|/(p-a)` and `c2 = |b-p|/(b-p)`.
pub fn corner_closed_form(corner: &CornerSpec, z: Complex64) -> Result<CornerValue> {
    let CornerSpec { a, p, b } = *corner;
    let first = segment_closed_form(a, p, z)?;
    let second = segment_closed_form(p, b, z)?;
    let c1 = unit_tangent_reciprocal(a, p);
    let c2 = unit_tangent_reciprocal(p, b);
    Ok(CornerValue {
        value: c1 * first + c2 * second,
        c1,
        c2,
    })
}

/// `int_{|ζ|=1} (z-ζ)^-2 ζ^-1 dζ` (counterclockwise): zero inside the circle,
/// `2πi / z^2` outside.
pub fn circle_weighted_closed_form(z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if (r - 1.0).abs() <= MIN_CURVE_DISTANCE {
        return Err(Error::PointOnCurve {
            point: z,
            distance: (r - 1.0).abs(),
        });
    }
    if r < 1.0 {
        Ok(Complex64::new(0.0, 0.0))
    } else {
        Ok(Complex64::new(0.0, 2.0 * PI) / (z * z))
    }
}

fn on_ray(z: Complex64, q: Complex64, direction: Complex64) -> bool {
    let t = ((z - q) * direction.conj()).re.max(0.0);
    (z - (q + direction * t)).norm() <= MIN_CURVE_DISTANCE
}

/// Weighted integral over the ray from `q` in unit direction `direction`:
/// `(-density / direction) / (z - q)`.
pub fn ray_closed_form(q: Complex64, direction: Complex64, density: f64, z: Complex64) -> Result<Complex64> {
    if (direction.norm() - 1.0).abs() > 1e-14 {
        return Err(Error::InvalidGeometry("ray direction must have unit modulus".into()));
    }
    if on_ray(z, q, direction) {
        return Err(Error::PointOnCurve {
            point: z,
            distance: 0.0,
        });
    }
    Ok(-density / direction / (z - q))
}

/// Finitely many rays from a common apex, each with its own density.
#[derive(Debug, Clone, PartialEq)]
pub struct RayFan {
    apex: Complex64,
    rays: Vec<(Complex64, f64)>,
}

impl RayFan {
    /// Directions are normalized; densities must be positive.
    pub fn new(apex: Complex64, rays: Vec<(Complex64, f64)>) -> Result<Self> {
        if rays.is_empty() {
            return Err(Error::InvalidGeometry("a fan needs at least one ray".into()));
        }
        let rays = rays
            .into_iter()
            .map(|(d, rho)| {
                let piece = CurvePiece::ray(apex, d, rho)?;
                match piece.kind() {
                    PieceKind::Ray { direction, .. } => Ok((*direction, rho)),
                    _ => unreachable!(),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { apex, rays })
    }

    /// Rays at the given angles (radians), all with density `density`.
    pub fn from_angles(apex: Complex64, angles: &[f64], density: f64) -> Result<Self> {
        Self::new(
            apex,
            angles.iter().map(|&t| (Complex64::from_polar(1.0, t), density)).collect(),
        )
    }

    pub fn apex(&self) -> Complex64 {
        self.apex
    }

    pub fn rays(&self) -> &[(Complex64, f64)] {
        &self.rays
    }

    /// `-sum_k density_k / direction_k`: the fan integrates to this times `1/(z-q)`.
    pub fn balance_constant(&self) -> Complex64 {
        self.rays.iter().map(|&(d, rho)| -rho / d).sum()
    }

    /// Union of two fans with the same apex.
    pub fn union(&self, other: &RayFan) -> Result<RayFan> {
        if self.apex != other.apex {
            return Err(Error::Domain("fans have different apexes".into()));
        }
        let mut rays = self.rays.clone();
        rays.extend_from_slice(&other.rays);
        Ok(RayFan {
            apex: self.apex,
            rays,
        })
    }

    pub fn scaled(&self, factor: f64) -> Result<RayFan> {
        RayFan::new(self.apex, self.rays.iter().map(|&(d, rho)| (d, rho * factor)).collect())
    }

    pub fn to_curve(&self) -> Result<PlaneCurve> {
        let pieces = self
            .rays
            .iter()
            .map(|&(d, rho)| CurvePiece::ray(self.apex, d, rho))
            .collect::<Result<Vec<_>>>()?;
        PlaneCurve::new(pieces, false)
    }

    /// Recovers a fan from a curve made only of rays sharing one apex.
    pub fn from_curve(curve: &PlaneCurve) -> Option<RayFan> {
        let mut apex = None;
        let mut rays = Vec::new();
        for piece in curve.pieces() {
            match *piece.kind() {
                PieceKind::Ray { origin, direction } => {
                    if *apex.get_or_insert(origin) != origin {
                        return None;
                    }
                    rays.push((direction, piece.density()));
                }
                _ => return None,
            }
        }
        Some(RayFan { apex: apex?, rays })
    }
}

/// Coefficient of `1/(z-q)` in the curve's integral under `measure`, read off
/// exactly from its straight pieces. `None` if an arc touches `q`.
pub fn analytic_residue(curve: &PlaneCurve, q: Complex64, measure: MeasureKind) -> Option<Complex64> {
    let near = |v: Complex64| (v - q).norm() <= 1e-9;
    let mut total = Complex64::new(0.0, 0.0);
    for piece in curve.pieces() {
        let weight = |c: Complex64| match measure {
            MeasureKind::ComplexForm => Complex64::new(1.0, 0.0),
            MeasureKind::Arclength => c,
            MeasureKind::Weighted => c * piece.density(),
        };
        match *piece.kind() {
            PieceKind::Segment { a, b } => {
                let c = weight(unit_tangent_reciprocal(a, b));
                if near(a) {
                    total -= c;
                }
                if near(b) {
                    total += c;
                }
            }
            PieceKind::Ray { origin, direction } => {
                if near(origin) {
                    total -= weight(direction.inv());
                }
            }
            PieceKind::Arc { .. } => {
                if near(piece.start()) || piece.end().is_some_and(near) {
                    return None;
                }
            }
        }
    }
    Some(total)
}
