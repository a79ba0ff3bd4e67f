use std::f64::consts::TAU;

use num_complex::Complex64;

use super::quadrature::QuadratureSpec;
use crate::error::{Error, Result};

/// Tolerance for matching endpoints of consecutive pieces on a closed curve.
pub const CLOSURE_TOL: f64 = 1e-12;

/// Evaluation points nearer than this to a curve are rejected.
pub const MIN_CURVE_DISTANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PieceKind {
    Segment {
        a: Complex64,
        b: Complex64,
    },
    /// `center + radius * e^{iθ}` for θ from `theta0` to `theta1`; the arc runs
    /// counterclockwise when `theta1 > theta0`.
    Arc {
        center: Complex64,
        radius: f64,
        theta0: f64,
        theta1: f64,
    },
    Ray {
        origin: Complex64,
        direction: Complex64,
    },
}

/// One piece of a planar curve carrying a constant positive density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePiece {
    kind: PieceKind,
    density: f64,
}

/// A sample on a piece: position, `dζ/dt`, `|dζ/dt|` and the density there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiecePoint {
    pub position: Complex64,
    pub d_zeta: Complex64,
    pub speed: f64,
    pub density: f64,
}

fn check_density(density: f64) -> Result<()> {
    if density > 0.0 && density.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidGeometry(format!("density must be positive, got {density}")))
    }
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let t = ((z - a) * d.conj()).re / d.norm_sqr();
    let t = t.clamp(0.0, 1.0);
    (z - (a + d * t)).norm()
}

impl CurvePiece {
    pub fn new(kind: PieceKind, density: f64) -> Result<Self> {
        check_density(density)?;
        match kind {
            PieceKind::Segment { a, b } => {
                if a == b {
                    return Err(Error::InvalidGeometry("segment endpoints coincide".into()));
                }
            }
            PieceKind::Arc {
                radius,
                theta0,
                theta1,
                ..
            } => {
                if !(radius > 0.0 && radius.is_finite()) {
                    return Err(Error::InvalidGeometry(format!("arc radius must be positive, got {radius}")));
                }
                if theta0 == theta1 || (theta1 - theta0).abs() > TAU + 1e-12 {
                    return Err(Error::InvalidGeometry("arc angle span must lie in (0, 2π]".into()));
                }
            }
            PieceKind::Ray { direction, .. } => {
                if (direction.norm() - 1.0).abs() > 1e-14 {
                    return Err(Error::InvalidGeometry("ray direction must have unit modulus".into()));
                }
            }
        }
        Ok(Self { kind, density })
    }

    pub fn segment(a: Complex64, b: Complex64, density: f64) -> Result<Self> {
        Self::new(PieceKind::Segment { a, b }, density)
    }

    pub fn arc(center: Complex64, radius: f64, theta0: f64, theta1: f64, density: f64) -> Result<Self> {
        Self::new(
            PieceKind::Arc {
                center,
                radius,
                theta0,
                theta1,
            },
            density,
        )
    }

    /// A ray; `direction` is normalized here, so any nonzero complex number works.
    pub fn ray(origin: Complex64, direction: Complex64, density: f64) -> Result<Self> {
        let norm = direction.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidGeometry("ray direction must be nonzero".into()));
        }
        Self::new(
            PieceKind::Ray {
                origin,
                direction: direction / norm,
            },
            density,
        )
    }

    pub fn kind(&self) -> &PieceKind {
        &self.kind
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn start(&self) -> Complex64 {
        match self.kind {
            PieceKind::Segment { a, .. } => a,
            PieceKind::Arc {
                center,
                radius,
                theta0,
                ..
            } => center + Complex64::from_polar(radius, theta0),
            PieceKind::Ray { origin, .. } => origin,
        }
    }

    /// End point; rays have none.
    pub fn end(&self) -> Option<Complex64> {
        match self.kind {
            PieceKind::Segment { b, .. } => Some(b),
            PieceKind::Arc {
                center,
                radius,
                theta1,
                ..
            } => Some(center + Complex64::from_polar(radius, theta1)),
            PieceKind::Ray { .. } => None,
        }
    }

    /// Unit tangent in the direction of travel at the start point.
    pub fn start_tangent(&self) -> Complex64 {
        let d = self.point(0.0).d_zeta;
        d / d.norm()
    }

    /// Unit tangent pointing back along the piece from its end point.
    pub fn end_tangent_reversed(&self) -> Option<Complex64> {
        let d = match self.kind {
            PieceKind::Ray { .. } => return None,
            _ => self.point(1.0).d_zeta,
        };
        Some(-d / d.norm())
    }

    /// Parameter interval. Segments and arcs use `[0, 1]`; rays use `[0, T]`
    /// with `T` from [`QuadratureSpec::ray_cutoff`].
    pub fn parameter_range(&self, near: Option<Complex64>, spec: &QuadratureSpec) -> (f64, f64) {
        match self.kind {
            PieceKind::Ray { origin, .. } => {
                let d = near.map_or(0.0, |z| (z - origin).norm());
                (0.0, spec.ray_cutoff(d, self.density.max(1.0)))
            }
            _ => (0.0, 1.0),
        }
    }

    /// Coarse panels before refinement; rays get geometrically growing panels.
    pub(crate) fn initial_panels(&self, lo: f64, hi: f64, near: Option<Complex64>) -> Vec<(f64, f64)> {
        match self.kind {
            PieceKind::Ray { origin, .. } => {
                let mut step = near.map_or(1.0, |z| (z - origin).norm()).max(1e-3);
                let mut panels = Vec::new();
                let mut a = lo;
                while a < hi {
                    let b = (a + step).min(hi);
                    panels.push((a, b));
                    a = b;
                    step = a.max(step);
                }
                panels
            }
            _ => vec![(lo, hi)],
        }
    }

    pub fn point(&self, t: f64) -> PiecePoint {
        match self.kind {
            PieceKind::Segment { a, b } => {
                let d = b - a;
                PiecePoint {
                    position: a + d * t,
                    d_zeta: d,
                    speed: d.norm(),
                    density: self.density,
                }
            }
            PieceKind::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => {
                let span = theta1 - theta0;
                let w = Complex64::from_polar(radius, theta0 + span * t);
                PiecePoint {
                    position: center + w,
                    d_zeta: Complex64::i() * w * span,
                    speed: radius * span.abs(),
                    density: self.density,
                }
            }
            PieceKind::Ray { origin, direction } => PiecePoint {
                position: origin + direction * t,
                d_zeta: direction,
                speed: 1.0,
                density: self.density,
            },
        }
    }

    /// Length of the sub-piece between parameters `a` and `b`.
    pub fn sub_length(&self, a: f64, b: f64) -> f64 {
        self.point(a).speed * (b - a).abs()
    }

    /// Exact distance from `z` to the sub-piece between parameters `a < b`.
    pub fn sub_distance(&self, z: Complex64, a: f64, b: f64) -> f64 {
        match self.kind {
            PieceKind::Segment { .. } | PieceKind::Ray { .. } => {
                segment_distance(z, self.point(a).position, self.point(b).position)
            }
            PieceKind::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => {
                let span = theta1 - theta0;
                let (ta, tb) = (theta0 + span * a, theta0 + span * b);
                let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
                let w = z - center;
                let inside = hi - lo >= TAU || (w.arg() - lo).rem_euclid(TAU) <= hi - lo;
                if inside && w.norm() > 0.0 {
                    (w.norm() - radius).abs()
                } else if w.norm() == 0.0 {
                    radius
                } else {
                    let pa = center + Complex64::from_polar(radius, lo);
                    let pb = center + Complex64::from_polar(radius, hi);
                    (z - pa).norm().min((z - pb).norm())
                }
            }
        }
    }

    pub fn distance_to(&self, z: Complex64) -> f64 {
        match self.kind {
            PieceKind::Ray { origin, direction } => {
                let t = ((z - origin) * direction.conj()).re.max(0.0);
                (z - (origin + direction * t)).norm()
            }
            _ => self.sub_distance(z, 0.0, 1.0),
        }
    }
}

/// A planar integration domain built from pieces with constant densities.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCurve {
    pieces: Vec<CurvePiece>,
    closed: bool,
}

impl PlaneCurve {
    pub fn new(pieces: Vec<CurvePiece>, closed: bool) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidGeometry("curve has no pieces".into()));
        }
        if closed {
            for (k, piece) in pieces.iter().enumerate() {
                let end = piece
                    .end()
                    .ok_or_else(|| Error::InvalidGeometry("closed curve contains a ray".into()))?;
                let next = pieces[(k + 1) % pieces.len()].start();
                if (end - next).norm() > CLOSURE_TOL {
                    return Err(Error::InvalidGeometry(format!(
                        "closed curve has a gap after piece {k}"
                    )));
                }
            }
        }
        Ok(Self { pieces, closed })
    }

    /// Closed polygon through `vertices` (the last vertex connects to the first).
    pub fn polygon(vertices: &[Complex64], density: f64) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidGeometry("polygon needs at least 3 vertices".into()));
        }
        let n = vertices.len();
        let pieces = (0..n)
            .map(|k| CurvePiece::segment(vertices[k], vertices[(k + 1) % n], density))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pieces, true)
    }

    /// Open polyline through `vertices`.
    pub fn polyline(vertices: &[Complex64], density: f64) -> Result<Self> {
        let pieces = vertices
            .windows(2)
            .map(|w| CurvePiece::segment(w[0], w[1], density))
            .collect::<Result<Vec<_>>>()?;
        Self::new(pieces, false)
    }

    /// Full line through `point`, represented as two opposite rays.
    pub fn line(point: Complex64, direction: Complex64, density: f64) -> Result<Self> {
        Self::new(
            vec![
                CurvePiece::ray(point, direction, density)?,
                CurvePiece::ray(point, -direction, density)?,
            ],
            false,
        )
    }

    /// Counterclockwise circle.
    pub fn circle(center: Complex64, radius: f64, density: f64) -> Result<Self> {
        Self::new(vec![CurvePiece::arc(center, radius, 0.0, TAU, density)?], true)
    }

    pub fn pieces(&self) -> &[CurvePiece] {
        &self.pieces
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn distance_to(&self, z: Complex64) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.distance_to(z))
            .fold(f64::INFINITY, f64::min)
    }

    /// Fails with [`Error::PointOnCurve`] when `z` is within [`MIN_CURVE_DISTANCE`].
    pub fn check_off_curve(&self, z: Complex64) -> Result<f64> {
        let distance = self.distance_to(z);
        if distance.is_nan() || distance <= MIN_CURVE_DISTANCE {
            return Err(Error::PointOnCurve { point: z, distance });
        }
        Ok(distance)
    }

    /// Piece endpoints and ray apexes, deduplicated.
    pub fn vertices(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::new();
        for piece in &self.pieces {
            for v in std::iter::once(piece.start()).chain(piece.end()) {
                if out.iter().all(|w| (w - v).norm() > CLOSURE_TOL) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn is_vertex(&self, q: Complex64) -> bool {
        self.vertices().iter().any(|v| (v - q).norm() <= 1e-9)
    }

    /// Unit directions in which pieces leave the vertex `q`.
    pub fn directions_at(&self, q: Complex64) -> Vec<Complex64> {
        let mut out = Vec::new();
        for piece in &self.pieces {
            if (piece.start() - q).norm() <= 1e-9 {
                out.push(piece.start_tangent());
            }
            if let (Some(end), Some(t)) = (piece.end(), piece.end_tangent_reversed()) {
                if (end - q).norm() <= 1e-9 {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Distance from `q` to the nearest other vertex, or to the nearest piece
    /// not incident to `q`; 1 when there is none.
    pub fn local_scale(&self, q: Complex64) -> f64 {
        let mut scale = f64::INFINITY;
        for v in self.vertices() {
            let d = (v - q).norm();
            if d > 1e-9 {
                scale = scale.min(d);
            }
        }
        for piece in &self.pieces {
            let incident = (piece.start() - q).norm() <= 1e-9
                || piece.end().is_some_and(|e| (e - q).norm() <= 1e-9);
            if !incident {
                scale = scale.min(piece.distance_to(q));
            }
        }
        if scale.is_finite() {
            scale
        } else {
            1.0
        }
    }
}
