//! Self-checks over the algebra, the planar integrals and the Clifford
//! kernel, each comparing a computed value against an independent route.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    cauchy_kernel, cauchy_kernel_derivative, check_kernel_potential, dirac_squared, even_part_to_complex,
    kernel_dirac_residual, kernel_dirac_residual_y, kernel_potential_constant, surface_cauchy_integral,
    surface_derivative_integral, DiracSpec, SurfaceWeight,
};
use crate::clifford::{CliffordVector, Multivector, Paravector};
use crate::error::{Error, Result};
use crate::geometry::{mesh_sphere, PlaneCurve, QuadratureSpec};
use crate::plane::{
    cauchy_squared, circle_weighted_closed_form, corner_closed_form, integrate_curve, inverse_weighted_integral,
    mass_integral, ray_closed_form, residue_fit, segment_closed_form, segment_closed_form_with, CornerSpec,
    MeasureKind, RayFan,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|actual - expected| <= tolerance`
    AbsDiff,
    /// `actual <= tolerance`, for error measures whose ideal value is 0
    AtMost,
    /// `actual >= expected`
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    pub fn abs_diff(name: &str, expected: f64, actual: f64, tolerance: f64) -> Self {
        Self::build(name, expected, actual, tolerance, Comparison::AbsDiff)
    }

    pub fn at_most(name: &str, bound: f64, actual: f64) -> Self {
        Self::build(name, 0.0, actual, bound, Comparison::AtMost)
    }

    pub fn at_least(name: &str, bound: f64, actual: f64) -> Self {
        Self::build(name, bound, actual, 0.0, Comparison::AtLeast)
    }

    fn build(name: &str, expected: f64, actual: f64, tolerance: f64, comparison: Comparison) -> Self {
        let passed = match comparison {
            Comparison::AbsDiff => (actual - expected).abs() <= tolerance,
            Comparison::AtMost => actual <= tolerance,
            Comparison::AtLeast => actual >= expected,
        };
        Self {
            name: name.to_string(),
            expected,
            actual,
            tolerance,
            comparison,
            passed,
            error: None,
        }
    }

    fn failed(name: &str, err: Error) -> Self {
        Self {
            name: name.to_string(),
            expected: f64::NAN,
            actual: f64::NAN,
            tolerance: f64::NAN,
            comparison: Comparison::AbsDiff,
            passed: false,
            error: Some(err.to_string()),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        if let Some(err) = &self.error {
            return write!(f, "{status} {}: {err}", self.name);
        }
        match self.comparison {
            Comparison::AbsDiff => write!(
                f,
                "{status} {}: expected {:e} actual {:e} tol {:e}",
                self.name, self.expected, self.actual, self.tolerance
            ),
            Comparison::AtMost => write!(f, "{status} {}: {:e} <= {:e}", self.name, self.actual, self.tolerance),
            Comparison::AtLeast => write!(f, "{status} {}: {:e} >= {:e}", self.name, self.actual, self.expected),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Plane,
    Clifford,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algebra" => Ok(Suite::Algebra),
            "plane" => Ok(Suite::Plane),
            "clifford" => Ok(Suite::Clifford),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidSpec(format!("unknown suite `{s}`"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Algebra => "algebra",
            Suite::Plane => "plane",
            Suite::Clifford => "clifford",
            Suite::All => "all",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub suite: Suite,
    pub seed: u64,
    pub quadrature: QuadratureSpec,
    pub checks: Vec<Check>,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "suite {}: {}/{} passed in {:.2}s (seed {})",
            self.suite,
            self.checks.len() - self.failures(),
            self.checks.len(),
            self.wall_time_s,
            self.seed
        )
    }
}

pub fn run_suite(suite: Suite, seed: u64, spec: &QuadratureSpec) -> Result<RunReport> {
    spec.validate()?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    if matches!(suite, Suite::Algebra | Suite::All) {
        checks.extend(algebra_checks(&mut rng));
    }
    if matches!(suite, Suite::Plane | Suite::All) {
        checks.extend(plane_checks(&mut rng, spec));
    }
    if matches!(suite, Suite::Clifford | Suite::All) {
        checks.extend(clifford_checks(&mut rng));
    }
    Ok(RunReport {
        suite,
        seed,
        quadrature: spec.clone(),
        checks,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

fn run(name: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::failed(name, e))
}

fn random_mv(rng: &mut ChaCha8Rng, dim: usize) -> Result<Multivector> {
    Multivector::from_coeffs((0..1usize << dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
}

fn random_vec(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn random_c(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn algebra_checks(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut checks = vec![run("anticommutation", || {
        let mut worst: f64 = 0.0;
        for n in 1..=6 {
            for i in 1..=n {
                let ei = Multivector::generator(n, i)?;
                let sq = ei.product(&ei)?;
                worst = worst.max(sq.max_abs_diff(&Multivector::scalar(n, -1.0)?)?);
                for j in 1..=n {
                    if i != j {
                        let ej = Multivector::generator(n, j)?;
                        worst = worst.max((&ei.product(&ej)? + &ej.product(&ei)?).norm());
                    }
                }
            }
        }
        Ok(Check::abs_diff("anticommutation", 0.0, worst, 0.0))
    })];

    checks.push(run("associativity", || {
        let mut worst: f64 = 0.0;
        for k in 0..200 {
            let n = 1 + k % 5;
            let (a, b, c) = (random_mv(rng, n)?, random_mv(rng, n)?, random_mv(rng, n)?);
            let left = a.product(&b)?.product(&c)?;
            let right = a.product(&b.product(&c)?)?;
            worst = worst.max(left.max_abs_diff(&right)?);
        }
        Ok(Check::at_most("associativity", 1e-12, worst))
    }));

    checks.push(run("distributivity", || {
        let mut worst: f64 = 0.0;
        for k in 0..200 {
            let n = 1 + k % 5;
            let (a, b, c) = (random_mv(rng, n)?, random_mv(rng, n)?, random_mv(rng, n)?);
            let left = a.product(&(&b + &c))?;
            let right = &a.product(&b)? + &a.product(&c)?;
            worst = worst.max(left.max_abs_diff(&right)?);
        }
        Ok(Check::at_most("distributivity", 1e-12, worst))
    }));

    checks.push(run("vector_square_and_inverse", || {
        let mut worst: f64 = 0.0;
        for k in 0..100 {
            let n = 1 + k % 6;
            let v = CliffordVector::new(random_vec(rng, n))?;
            let m = v.to_multivector();
            let sq = m.product(&m)?;
            worst = worst.max(sq.max_abs_diff(&Multivector::scalar(n, -v.norm_squared())?)?);
            let inv = v.inverse()?.to_multivector();
            worst = worst.max(m.product(&inv)?.max_abs_diff(&Multivector::scalar(n, 1.0)?)?);
        }
        Ok(Check::at_most("vector_square_and_inverse", 1e-12, worst))
    }));

    checks.push(run("paravector_conjugation", || {
        let mut worst: f64 = 0.0;
        for k in 0..100 {
            let n = 1 + k % 6;
            let p = Paravector::new(rng.gen_range(-1.0..1.0), random_vec(rng, n))?;
            let m = p.to_multivector();
            let norm = Multivector::scalar(n, p.norm_squared())?;
            worst = worst.max(m.product(&p.conjugate().to_multivector())?.max_abs_diff(&norm)?);
            let one = Multivector::scalar(n, 1.0)?;
            worst = worst.max(m.product(&p.inverse()?.to_multivector())?.max_abs_diff(&one)?);
        }
        Ok(Check::at_most("paravector_conjugation", 1e-12, worst))
    }));

    checks.push(run("complex_isomorphism", || {
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let (a, b) = (random_c(rng, 1.0), random_c(rng, 1.0));
            let ma = Multivector::from_coeffs(vec![a.re, a.im])?;
            let mb = Multivector::from_coeffs(vec![b.re, b.im])?;
            let p = ma.product(&mb)?;
            let c = a * b;
            worst = worst.max((p.coeffs()[0] - c.re).abs()).max((p.coeffs()[1] - c.im).abs());
        }
        Ok(Check::at_most("complex_isomorphism", 1e-15, worst))
    }));

    checks.push(run("quaternion_table", || {
        let i = Multivector::generator(2, 1)?;
        let j = Multivector::generator(2, 2)?;
        let k = i.product(&j)?;
        let minus_one = Multivector::scalar(2, -1.0)?;
        let worst = [
            k.product(&k)?.max_abs_diff(&minus_one)?,
            j.product(&k)?.max_abs_diff(&i)?,
            k.product(&i)?.max_abs_diff(&j)?,
            j.product(&i)?.max_abs_diff(&-&k)?,
        ]
        .into_iter()
        .fold(0.0, f64::max);
        Ok(Check::abs_diff("quaternion_table", 0.0, worst, 0.0))
    }));
    checks
}

/// Star-shaped polygon with `sides` vertices around `center`.
pub fn random_polygon(rng: &mut ChaCha8Rng, sides: usize, center: Complex64) -> Result<PlaneCurve> {
    let mut angles: Vec<f64> = (0..sides).map(|_| rng.gen_range(0.0..TAU)).collect();
    angles.sort_by(f64::total_cmp);
    let vertices: Vec<Complex64> = angles
        .iter()
        .map(|&t| center + Complex64::from_polar(rng.gen_range(0.5..1.5), t))
        .collect();
    PlaneCurve::polygon(&vertices, 1.0)
}

fn perimeter(curve: &PlaneCurve) -> f64 {
    curve.pieces().iter().map(|p| p.sub_length(0.0, 1.0)).sum()
}

/// A point in `[-r, r]^2` at distance at least `min_distance` from the curve.
fn point_off(rng: &mut ChaCha8Rng, curve: &PlaneCurve, r: f64, min_distance: f64) -> (Complex64, f64) {
    loop {
        let z = random_c(rng, r);
        let d = curve.distance_to(z);
        if d >= min_distance {
            return (z, d);
        }
    }
}

fn plane_checks(rng: &mut ChaCha8Rng, spec: &QuadratureSpec) -> Vec<Check> {
    let mut checks = vec![run("closed_polygon_vanishing", || {
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let sides = rng.gen_range(3..9);
            let curve = random_polygon(rng, sides, Complex64::new(0.0, 0.0))?;
            let length = perimeter(&curve);
            for _ in 0..10 {
                let (z, d) = point_off(rng, &curve, 2.0, 0.05);
                let v = cauchy_squared(&curve, MeasureKind::ComplexForm, z, spec)?;
                worst = worst.max(v.norm() * d * d / length);
            }
        }
        Ok(Check::at_most("closed_polygon_vanishing", 1e-9, worst))
    })];

    checks.push(run("segment_closed_form", || {
        let mut worst: f64 = 0.0;
        for k in 0..50 {
            let (a, b) = (random_c(rng, 1.0), random_c(rng, 1.0));
            if (b - a).norm() < 0.1 {
                continue;
            }
            let curve = PlaneCurve::polyline(&[a, b], 1.0)?;
            let (z, _) = point_off(rng, &curve, 2.0, 0.05);
            let measure = if k % 2 == 0 { MeasureKind::ComplexForm } else { MeasureKind::Arclength };
            let numeric = cauchy_squared(&curve, measure, z, spec)?;
            worst = worst.max(rel(numeric, segment_closed_form_with(a, b, z, measure, 1.0)?));
        }
        Ok(Check::at_most("segment_closed_form", 1e-9, worst))
    }));

    checks.push(run("segment_example", || {
        let curve = PlaneCurve::polyline(&[Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)], 1.0)?;
        let v = cauchy_squared(&curve, MeasureKind::ComplexForm, Complex64::i(), spec)?;
        Ok(Check::abs_diff("segment_example", 0.0, (v + 1.0).norm(), 1e-9))
    }));

    checks.push(run("path_independence", || {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let (a, b) = (random_c(rng, 1.0), random_c(rng, 1.0));
            let mut path = vec![a];
            path.extend((0..rng.gen_range(1..4)).map(|_| random_c(rng, 1.5)));
            path.push(b);
            let curve = PlaneCurve::polyline(&path, 1.0)?;
            let (z, d) = point_off(rng, &curve, 2.0, 0.05);
            let direct = PlaneCurve::polyline(&[a, b], 1.0)?;
            if direct.distance_to(z) < 0.05 {
                continue;
            }
            let diff = cauchy_squared(&curve, MeasureKind::ComplexForm, z, spec)?
                - cauchy_squared(&direct, MeasureKind::ComplexForm, z, spec)?;
            worst = worst.max(diff.norm() * d * d / perimeter(&curve));
        }
        Ok(Check::at_most("path_independence", 1e-9, worst))
    }));

    checks.push(run("circle_dichotomy", || {
        let circle = PlaneCurve::circle(Complex64::new(0.0, 0.0), 1.0, 1.0)?;
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let z = Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..TAU));
            let z = if z.norm() < 0.05 { z + 0.1 } else { z };
            worst = worst.max(inverse_weighted_integral(&circle, z, spec)?.norm());
            let w = Complex64::from_polar(rng.gen_range(1.1..4.0), rng.gen_range(0.0..TAU));
            worst = worst.max(rel(inverse_weighted_integral(&circle, w, spec)?, circle_weighted_closed_form(w)?));
        }
        Ok(Check::at_most("circle_dichotomy", 1e-8, worst))
    }));

    checks.push(run("corner_residue", || {
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let p = random_c(rng, 1.0);
            let a = p + Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..TAU));
            let b = p + Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..TAU));
            let corner = CornerSpec::new(a, p, b)?;
            let exact = corner_closed_form(&corner, p + 1.0)?.residue();
            let fit = residue_fit(&corner.to_curve(1.0)?, p, MeasureKind::Arclength, spec)?;
            worst = worst.max((fit.coefficient - exact).norm() / exact.norm().max(1e-3));
        }
        Ok(Check::at_most("corner_residue", 1e-4, worst))
    }));

    checks.push(run("corner_residue_monotone", || {
        let p = Complex64::new(0.0, 0.0);
        let mut mags = Vec::new();
        // the straight angle itself is not a corner
        for k in 0..10 {
            let angle = FRAC_PI_2 + FRAC_PI_2 * k as f64 / 10.0;
            let corner = CornerSpec::new(Complex64::from_polar(1.0, angle), p, Complex64::new(1.0, 0.0))?;
            mags.push(corner_closed_form(&corner, Complex64::new(3.0, 3.0))?.residue().norm());
        }
        let violations = mags.windows(2).filter(|w| w[1] >= w[0]).count();
        Ok(Check::abs_diff("corner_residue_monotone", 0.0, violations as f64, 0.0))
    }));

    checks.push(run("ray_balance", || {
        let fan = RayFan::from_angles(Complex64::new(0.2, -0.1), &[0.3, 2.1, 4.0], 1.5)?;
        let z = Complex64::new(1.1, 0.7);
        let sum: Complex64 = fan
            .rays()
            .iter()
            .map(|&(dir, rho)| ray_closed_form(fan.apex(), dir, rho, z))
            .sum::<Result<Complex64>>()?;
        Ok(Check::at_most("ray_balance", 1e-12, rel(sum * (z - fan.apex()), fan.balance_constant())))
    }));

    checks.push(run("ray_residue_fit", || {
        let fan = RayFan::from_angles(Complex64::new(0.0, 0.0), &[0.0, 2.0, 4.2], 1.0)?;
        let fit = residue_fit(&fan.to_curve()?, fan.apex(), MeasureKind::Weighted, spec)?;
        Ok(Check::at_most("ray_residue_fit", 1e-6, rel(fit.coefficient, fan.balance_constant())))
    }));

    checks.push(run("ray_quadrature", || {
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let q = random_c(rng, 1.0);
            let dir = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
            let rho = rng.gen_range(0.5..2.0);
            let fan = RayFan::new(q, vec![(dir, rho)])?;
            let curve = fan.to_curve()?;
            let (z, _) = point_off(rng, &curve, 2.0, 0.1);
            let numeric = cauchy_squared(&curve, MeasureKind::Weighted, z, spec)?;
            worst = worst.max(rel(numeric, ray_closed_form(q, dir, rho, z)?));
        }
        Ok(Check::at_most("ray_quadrature", 1e-8, worst))
    }));

    checks.push(run("balance_linearity", || {
        let a = RayFan::from_angles(Complex64::new(0.0, 0.0), &[0.1, 1.9], 0.7)?;
        let b = RayFan::from_angles(Complex64::new(0.0, 0.0), &[3.3, 5.0], 1.3)?;
        let union = a.union(&b)?.balance_constant();
        let scaled = a.scaled(2.5)?.balance_constant();
        let err = rel(union, a.balance_constant() + b.balance_constant())
            .max(rel(scaled, a.balance_constant() * 2.5));
        Ok(Check::at_most("balance_linearity", 1e-14, err))
    }));

    checks.push(run("line_flatness", || {
        let line = PlaneCurve::line(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), 1.0)?;
        let mut worst: f64 = 0.0;
        for y in [0.5, 1.0, 2.0] {
            let v = cauchy_squared(&line, MeasureKind::Arclength, Complex64::new(0.3, y), spec)?;
            worst = worst.max(v.norm() * y);
        }
        Ok(Check::at_most("line_flatness", 1e-6, worst))
    }));

    checks.push(run("line_mass", || {
        let line = PlaneCurve::line(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), 1.0)?;
        let mut worst: f64 = 0.0;
        for y in [0.5, 1.0, 2.0] {
            let m = mass_integral(&line, Complex64::new(0.0, y), spec)?;
            worst = worst.max((m * y - PI).abs());
        }
        Ok(Check::at_most("line_mass", 1e-6, worst))
    }));

    checks.push(run("arclength_factor", || {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let (a, b) = (random_c(rng, 1.0), random_c(rng, 1.0));
            if (b - a).norm() < 0.1 {
                continue;
            }
            let curve = PlaneCurve::polyline(&[a, b], 1.0)?;
            let (z, _) = point_off(rng, &curve, 2.0, 0.05);
            let arc = cauchy_squared(&curve, MeasureKind::Arclength, z, spec)?;
            let complex = segment_closed_form(a, b, z)?;
            worst = worst.max(rel(arc, complex * (b - a).norm() / (b - a)));
        }
        Ok(Check::at_most("arclength_factor", 1e-9, worst))
    }));
    checks
}

/// A named field in `R^3` together with its Laplacian.
pub type TestField = (&'static str, fn(&[f64]) -> Multivector, fn(&[f64]) -> Multivector);

/// Scalar-, bivector- and vector-valued fields in `R^3` with known Laplacians.
pub fn laplacian_test_fields() -> Vec<TestField> {
    fn blade(coeff: f64, mask: u32) -> Multivector {
        Multivector::from_blade(3, crate::clifford::BasisBlade::from_mask(mask), coeff).expect("dim 3")
    }
    vec![
        (
            "trig",
            |x| blade((10.0 * x[0]).sin() * (7.0 * x[1]).cos(), 0),
            |x| blade(-149.0 * (10.0 * x[0]).sin() * (7.0 * x[1]).cos(), 0),
        ),
        (
            "gaussian",
            |x| blade((-25.0 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])).exp(), 0b011),
            |x| {
                let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
                blade((2500.0 * r2 - 150.0) * (-25.0 * r2).exp(), 0b011)
            },
        ),
        (
            "quartic",
            |x| blade(x[0].powi(4) + x[1] * x[1] * x[2] * x[2], 0b100),
            |x| blade(12.0 * x[0] * x[0] + 2.0 * x[1] * x[1] + 2.0 * x[2] * x[2], 0b100),
        ),
    ]
}

/// Minimum decade-to-decade convergence slope of `error(h)` over
/// `h = 1e-2, 1e-3, 1e-4`.
pub fn convergence_slope(mut error: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let errs = [error(1e-2)?, error(1e-3)?, error(1e-4)?];
    Ok(errs.windows(2).map(|w| (w[0] / w[1]).log10()).fold(f64::INFINITY, f64::min))
}

fn clifford_checks(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let x0 = [0.31, -0.22, 0.17];
    let mut checks = vec![run("dirac_squared_laplacian", || {
        let mut worst: f64 = 0.0;
        for (_, f, lap) in laplacian_test_fields() {
            let d2 = dirac_squared(f, &x0, &DiracSpec::with_step(1e-3))?;
            let expected = lap(&x0).scale(-1.0);
            worst = worst.max(d2.max_abs_diff(&expected)? / expected.norm().max(1.0));
        }
        Ok(Check::at_most("dirac_squared_laplacian", 1e-3, worst))
    })];

    checks.push(run("dirac_squared_slope", || {
        let mut slope = f64::INFINITY;
        for (_, f, lap) in laplacian_test_fields() {
            let expected = lap(&x0).scale(-1.0);
            let s = convergence_slope(|h| dirac_squared(f, &x0, &DiracSpec::with_step(h))?.max_abs_diff(&expected))?;
            slope = slope.min(s);
        }
        Ok(Check::at_least("dirac_squared_slope", 1.9, slope))
    }));

    checks.push(run("kernel_analytic", || {
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let n = rng.gen_range(2..=5);
            let (x, y) = (random_vec(rng, n), random_vec(rng, n));
            let r: f64 = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            if r < 0.3 {
                continue;
            }
            let spec = DiracSpec::default();
            let scale = r.powi(-(n as i32) - 3);
            worst = worst
                .max(kernel_dirac_residual(&x, &y, &spec)?.norm() / scale)
                .max(kernel_dirac_residual_y(&x, &y, &spec)?.norm() / scale);
        }
        Ok(Check::at_most("kernel_analytic", 1e-6, worst))
    }));

    checks.push(run("kernel_analytic_slope", || {
        let (x, y) = ([0.7, -0.4, 0.5], [0.0, 0.1, -0.2]);
        let slope = convergence_slope(|h| Ok(kernel_dirac_residual(&x, &y, &DiracSpec::with_step(h))?.norm()))?;
        Ok(Check::at_least("kernel_analytic_slope", 1.9, slope))
    }));

    for n in 2..=4 {
        let name = format!("kernel_potential_n{n}");
        checks.push(run(&name, || {
            let mut worst: f64 = 0.0;
            for _ in 0..20 {
                let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0) * rng.gen_range(-1.0f64..1.0).signum()).collect();
                let ratio = check_kernel_potential(&x, &DiracSpec::default())?;
                worst = worst.max((ratio - kernel_potential_constant(n)).abs());
            }
            Ok(Check::at_most(&name, 1e-6, worst))
        }));
    }

    checks.push(run("n2_cross_module", || {
        let mut worst: f64 = 0.0;
        let minus_e1 = Multivector::generator(2, 1)?.scale(-1.0);
        let e1 = Multivector::generator(2, 1)?;
        for _ in 0..50 {
            let (x, y) = (random_vec(rng, 2), random_vec(rng, 2));
            let d = Complex64::new(x[0] - y[0], x[1] - y[1]);
            if d.norm() < 0.1 {
                continue;
            }
            let k = minus_e1.product(&cauchy_kernel(&x, &y)?.to_multivector())?;
            worst = worst.max(rel(even_part_to_complex(&k)?, d.inv()));
            let dk = e1.product(&cauchy_kernel_derivative(&x, &y, 0)?.to_multivector())?;
            worst = worst.max(rel(even_part_to_complex(&dk)?, (d * d).inv()));
        }
        // the planar integral through the Clifford kernel
        let (a, b, z) = (Complex64::new(-1.0, 0.2), Complex64::new(0.8, -0.3), Complex64::new(0.1, 0.9));
        let segment = PlaneCurve::polyline(&[a, b], 1.0)?;
        let via_kernel = integrate_curve(&segment, z, &QuadratureSpec::default(), |p| {
            let dk = cauchy_kernel_derivative(&[z.re, z.im], &[p.position.re, p.position.im], 0)
                .map(|v| e1.product(&v.to_multivector()).and_then(|m| even_part_to_complex(&m)));
            match dk {
                Ok(Ok(c)) => c * p.d_zeta,
                _ => Complex64::new(f64::NAN, f64::NAN),
            }
        })?;
        worst = worst.max(rel(via_kernel, segment_closed_form(a, b, z)?));
        Ok(Check::at_most("n2_cross_module", 1e-9, worst))
    }));

    let four_pi = 4.0 * PI;
    checks.push(run("sphere_interior_constant", || {
        let sphere = mesh_sphere([0.0; 3], 1.0, 4)?;
        let v = surface_cauchy_integral(&sphere, &[0.0; 3])?;
        Ok(Check::abs_diff("sphere_interior_constant", four_pi, v.scalar_part(), 1e-2 * four_pi))
    }));

    checks.push(run("sphere_interior_constancy", || {
        let sphere = mesh_sphere([0.0; 3], 1.0, 4)?;
        let values: Vec<Multivector> = (0..20)
            .map(|_| {
                let x: Vec<f64> = random_vec(rng, 3).iter().map(|v| 0.5 * v / 3f64.sqrt()).collect();
                surface_cauchy_integral(&sphere, &x)
            })
            .collect::<Result<_>>()?;
        let mut mean = Multivector::zero(3)?;
        for v in &values {
            mean += &v.scale(1.0 / values.len() as f64);
        }
        let var = values.iter().map(|v| (v - &mean).norm().powi(2)).sum::<f64>() / values.len() as f64;
        Ok(Check::at_most("sphere_interior_constancy", 1e-2, var.sqrt() / mean.norm()))
    }));

    checks.push(run("sphere_exterior", || {
        let sphere = mesh_sphere([0.0; 3], 1.0, 4)?;
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let dir = CliffordVector::new(random_vec(rng, 3))?;
            let x: Vec<f64> = dir.components().iter().map(|v| v * 2.5 / dir.norm()).collect();
            worst = worst.max(surface_cauchy_integral(&sphere, &x)?.norm());
        }
        Ok(Check::at_most("sphere_exterior", 1e-3 * four_pi, worst))
    }));

    checks.push(run("derivative_refinement", || {
        let x = [1.7, 0.4, -0.3];
        let mut mags = Vec::new();
        for level in 1..=4 {
            let sphere = mesh_sphere([0.0; 3], 1.0, level)?;
            mags.push(surface_derivative_integral(&sphere, SurfaceWeight::Normal, &x, 0)?.norm());
        }
        let decreasing = mags.windows(2).all(|w| w[1] < w[0]);
        let last = if decreasing { mags[3] } else { f64::INFINITY };
        Ok(Check::at_most("derivative_refinement", 1e-2 * four_pi, last))
    }));
    checks
}
