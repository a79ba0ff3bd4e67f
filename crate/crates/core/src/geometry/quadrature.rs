//! Adaptive Gauss–Legendre integration along curve pieces.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::curve::{CurvePiece, PiecePoint};
use crate::error::{Error, Result};

/// Numeric settings shared by every integral in the crate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum bisection depth of any panel.
    pub max_subdivisions: u32,
    /// Gauss–Legendre points per panel.
    pub base_nodes: usize,
    /// Bound on the neglected tail of a truncated ray.
    pub ray_truncation_tol: f64,
    /// Panels are split until `length <= distance / near_singularity_ratio`.
    pub near_singularity_ratio: f64,
    /// Residue sampling radius as a fraction of the local length scale.
    pub residue_radius_fraction: f64,
    pub residue_angles: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_subdivisions: 40,
            base_nodes: 16,
            ray_truncation_tol: 1e-10,
            near_singularity_ratio: 4.0,
            residue_radius_fraction: 0.05,
            residue_angles: 16,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("ray_truncation_tol", self.ray_truncation_tol),
            ("near_singularity_ratio", self.near_singularity_ratio),
            ("residue_radius_fraction", self.residue_radius_fraction),
        ];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidSpec(format!("{name} must be positive, got {value}")));
            }
        }
        if self.base_nodes < 2 {
            return Err(Error::InvalidSpec("base_nodes must be at least 2".into()));
        }
        if self.residue_angles < 3 {
            return Err(Error::InvalidSpec("residue_angles must be at least 3".into()));
        }
        Ok(())
    }

    /// Truncation radius `T` of a ray whose apex is at `apex_distance` from the
    /// evaluation point, such that `int_T^inf weight (t - d)^-2 dt <= ray_truncation_tol`.
    pub fn ray_cutoff(&self, apex_distance: f64, weight: f64) -> f64 {
        apex_distance + weight / self.ray_truncation_tol
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "need at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Rule applied on `[a, b]`; returns the sum and the absolute sum.
    pub fn apply<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> (Complex64, f64) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let v = f(mid + half * x) * (w * half);
            sum += v;
            abs += v.norm();
        }
        (sum, abs)
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let dp = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, dp)
}

/// Result of an adaptive integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    /// Sum of the per-panel refinement differences.
    pub error_bound: f64,
    /// Estimate of the integral of `|f|`, used for relative tolerances.
    pub magnitude: f64,
}

/// Integrates `f` over the parameter domain of `piece`.
///
/// `f` receives the point on the piece together with `dζ/dt` and `|dζ/dt|`, and
/// must return the full integrand per unit parameter. When `near` is given,
/// panels are graded towards it (see [`QuadratureSpec::near_singularity_ratio`]),
/// and rays are truncated assuming the integrand decays like
/// `weight * |near - ζ|^-2` with `weight = max(density, 1)`.
pub fn integrate_adaptive<F>(
    piece: &CurvePiece,
    near: Option<Complex64>,
    spec: &QuadratureSpec,
    f: F,
) -> Result<Integral>
where
    F: Fn(&PiecePoint) -> Complex64,
{
    spec.validate()?;
    let rule = GaussLegendre::new(spec.base_nodes);
    let (t_lo, t_hi) = piece.parameter_range(near, spec);
    let total = t_hi - t_lo;

    let mut panels = Vec::new();
    for (a, b) in piece.initial_panels(t_lo, t_hi, near) {
        split_near(piece, near, spec, a, b, 0, &mut panels);
    }

    let g = |t: f64| f(&piece.point(t));
    let mut acc = Accumulator::default();
    for (a, b) in panels {
        let coarse = rule.apply(a, b, g);
        refine(&rule, &g, spec, total, a, b, coarse.0, 0, &mut acc);
    }

    if acc.unconverged {
        return Err(Error::ConvergenceFailure {
            estimate: acc.value,
            error_bound: acc.error,
        });
    }
    Ok(Integral {
        value: acc.value,
        error_bound: acc.error,
        magnitude: acc.magnitude,
    })
}

#[derive(Default)]
struct Accumulator {
    value: Complex64,
    error: f64,
    magnitude: f64,
    unconverged: bool,
}

fn split_near(
    piece: &CurvePiece,
    near: Option<Complex64>,
    spec: &QuadratureSpec,
    a: f64,
    b: f64,
    depth: u32,
    out: &mut Vec<(f64, f64)>,
) {
    if let Some(z) = near {
        let length = piece.sub_length(a, b);
        let distance = piece.sub_distance(z, a, b);
        if length * spec.near_singularity_ratio > distance && depth < spec.max_subdivisions {
            let m = 0.5 * (a + b);
            split_near(piece, near, spec, a, m, depth + 1, out);
            split_near(piece, near, spec, m, b, depth + 1, out);
            return;
        }
    }
    out.push((a, b));
}

#[allow(clippy::too_many_arguments)]
fn refine<G: Fn(f64) -> Complex64>(
    rule: &GaussLegendre,
    g: &G,
    spec: &QuadratureSpec,
    total: f64,
    a: f64,
    b: f64,
    coarse: Complex64,
    depth: u32,
    acc: &mut Accumulator,
) {
    let m = 0.5 * (a + b);
    let (left, left_abs) = rule.apply(a, m, g);
    let (right, right_abs) = rule.apply(m, b, g);
    let fine = left + right;
    let magnitude = left_abs + right_abs;
    let err = (fine - coarse).norm();
    let tol = (spec.abs_tol * (b - a) / total).max(spec.rel_tol * magnitude);
    if err <= tol || !err.is_finite() || depth >= spec.max_subdivisions {
        if depth >= spec.max_subdivisions && err > tol || !err.is_finite() {
            acc.unconverged = true;
        }
        acc.value += fine;
        acc.error += err;
        acc.magnitude += magnitude;
        return;
    }
    refine(rule, g, spec, total, a, m, left, depth + 1, acc);
    refine(rule, g, spec, total, m, b, right, depth + 1, acc);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::curve::CurvePiece;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gauss_legendre_weights_and_exactness() {
        for n in [2, 5, 16, 31] {
            let gl = GaussLegendre::new(n);
            let wsum: f64 = gl.weights().iter().sum();
            assert!((wsum - 2.0).abs() < 1e-14, "n={n}");
            // exact for degree 2n-1
            let deg = 2 * n - 1;
            let (v, _) = gl.apply(0.0, 1.0, |x| c(x.powi(deg as i32), 0.0));
            assert!((v.re - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn polynomial_on_unit_segment() {
        let piece = CurvePiece::segment(c(0.0, 0.0), c(1.0, 0.0), 1.0).unwrap();
        let spec = QuadratureSpec::default();
        let r = integrate_adaptive(&piece, None, &spec, |p| p.position * p.position * p.d_zeta)
            .unwrap();
        assert!((r.value - c(1.0 / 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cauchy_square_on_segment() {
        let piece = CurvePiece::segment(c(-1.0, 0.0), c(1.0, 0.0), 1.0).unwrap();
        let z = c(0.0, 1.0);
        let r = integrate_adaptive(&piece, Some(z), &QuadratureSpec::default(), |p| {
            p.d_zeta / ((z - p.position) * (z - p.position))
        })
        .unwrap();
        assert!((r.value - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cauchy_square_on_ray() {
        let piece = CurvePiece::ray(c(0.0, 0.0), c(1.0, 0.0), 1.0).unwrap();
        let z = c(0.0, 1.0);
        let r = integrate_adaptive(&piece, Some(z), &QuadratureSpec::default(), |p| {
            p.d_zeta / ((z - p.position) * (z - p.position))
        })
        .unwrap();
        assert!((r.value - c(0.0, 1.0)).norm() < 1e-9, "{}", r.value);
    }

    #[test]
    fn doubling_the_ray_cutoff_changes_little() {
        let spec = QuadratureSpec::default();
        let z = c(0.3, 0.7);
        let integrand = |p: &PiecePoint| p.speed / ((z - p.position) * (z - p.position));
        let piece = CurvePiece::ray(c(0.0, 0.0), c(0.6, 0.8), 1.0).unwrap();
        let base = integrate_adaptive(&piece, Some(z), &spec, integrand).unwrap();
        let wide = QuadratureSpec {
            ray_truncation_tol: spec.ray_truncation_tol / 2.0,
            ..spec.clone()
        };
        let doubled = integrate_adaptive(&piece, Some(z), &wide, integrand).unwrap();
        assert!((base.value - doubled.value).norm() < spec.ray_truncation_tol);
    }

    #[test]
    fn convergence_failure_reports_estimate() {
        let piece = CurvePiece::segment(c(0.0, 0.0), c(1.0, 0.0), 1.0).unwrap();
        let spec = QuadratureSpec {
            max_subdivisions: 1,
            base_nodes: 2,
            rel_tol: 1e-14,
            abs_tol: 1e-16,
            ..QuadratureSpec::default()
        };
        let err = integrate_adaptive(&piece, None, &spec, |p| c((20.0 * p.position.re).sin(), 0.0))
            .unwrap_err();
        match err {
            Error::ConvergenceFailure { estimate, error_bound } => {
                assert!(estimate.re.is_finite());
                assert!(error_bound > 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_spec_rejected() {
        let piece = CurvePiece::segment(c(0.0, 0.0), c(1.0, 0.0), 1.0).unwrap();
        let spec = QuadratureSpec {
            base_nodes: 1,
            ..QuadratureSpec::default()
        };
        assert!(matches!(
            integrate_adaptive(&piece, None, &spec, |_| c(1.0, 0.0)),
            Err(Error::InvalidSpec(_))
        ));
    }
}
