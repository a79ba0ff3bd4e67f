//! Acceptance gate. Each criterion compares the library against an oracle
//! written out here, enforces its tolerance and a wall-clock limit, and
//! prints one PASS/FAIL line. Exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cauchy_curvature::analysis::{
    check_kernel_potential, dirac_squared, kernel_dirac_residual, surface_cauchy_integral,
    surface_derivative_integral, DiracSpec, SurfaceWeight,
};
use cauchy_curvature::clifford::{BasisBlade, Multivector};
use cauchy_curvature::geometry::{mesh_sphere, PlaneCurve, QuadratureSpec};
use cauchy_curvature::plane::{
    cauchy_squared, inverse_weighted_integral, mass_integral, residue_fit, MeasureKind, RayFan,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

// ---- blade products by explicit reordering of index words ----

fn oracle_blade_product(a: &[usize], b: &[usize]) -> (Vec<usize>, f64) {
    let mut word: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sign = 1.0;
    // bubble sort, one sign flip per transposition
    for i in 0..word.len() {
        for j in 0..word.len().saturating_sub(1 + i) {
            if word[j] > word[j + 1] {
                word.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    // contract e_k e_k = -1
    let mut out = Vec::new();
    let mut k = 0;
    while k < word.len() {
        if k + 1 < word.len() && word[k] == word[k + 1] {
            sign = -sign;
            k += 2;
        } else {
            out.push(word[k]);
            k += 1;
        }
    }
    (out, sign)
}

fn indices(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

fn oracle_product(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            let (word, sign) = oracle_blade_product(&indices(i), &indices(j));
            let mask: usize = word.iter().map(|k| 1 << (k - 1)).sum();
            out[mask] += sign * a * b;
        }
    }
    out
}

fn criterion_algebra(rng: &mut ChaCha8Rng) -> Outcome {
    for n in 1..=12 {
        for i in 1..=n {
            let ei = lib(Multivector::generator(n, i))?;
            let sq = lib(ei.product(&ei))?;
            ensure(sq == lib(Multivector::scalar(n, -1.0))?, format!("e{i}^2 != -1 in C({n})"))?;
            for j in i + 1..=n {
                let ej = lib(Multivector::generator(n, j))?;
                let ij = lib(ei.product(&ej))?;
                let ji = lib(ej.product(&ei))?;
                ensure(ij == -&ji, format!("e{i}e{j} != -e{j}e{i} in C({n})"))?;
            }
        }
    }
    let mut worst_assoc: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    for k in 0..1000 {
        let n = 1 + k % 5;
        let mut random = || -> Vec<f64> { (0..1 << n).map(|_| rng.gen_range(-1.0..1.0)).collect() };
        let (x, y, z) = (random(), random(), random());
        let mx = lib(Multivector::from_coeffs(x.clone()))?;
        let my = lib(Multivector::from_coeffs(y.clone()))?;
        let mz = lib(Multivector::from_coeffs(z))?;
        let xy = lib(mx.product(&my))?;
        let left = lib(xy.product(&mz))?;
        let right = lib(mx.product(&lib(my.product(&mz))?))?;
        worst_assoc = worst_assoc.max(lib(left.max_abs_diff(&right))?);
        for (got, want) in xy.coeffs().iter().zip(oracle_product(&x, &y)) {
            worst_oracle = worst_oracle.max((got - want).abs());
        }
    }
    ensure(worst_assoc <= 1e-12, format!("associativity error {worst_assoc:e}"))?;
    ensure(worst_oracle <= 1e-12, format!("product differs from reordering oracle by {worst_oracle:e}"))?;

    // quaternions: i = e1, j = e2, k = e1e2
    let q = |mask: u32| lib(Multivector::from_blade(2, BasisBlade::from_mask(mask), 1.0));
    let (one, i, j, k) = (q(0)?, q(1)?, q(2)?, q(3)?);
    let m1 = -&one;
    let table = [
        (&i, &i, m1.clone()),
        (&j, &j, m1.clone()),
        (&k, &k, m1.clone()),
        (&i, &j, k.clone()),
        (&j, &k, i.clone()),
        (&k, &i, j.clone()),
        (&j, &i, -&k),
        (&k, &j, -&i),
        (&i, &k, -&j),
    ];
    for (a, b, want) in table {
        ensure(lib(a.product(b))? == want, format!("quaternion table broken at {a} * {b}"))?;
    }
    Ok(format!("assoc {worst_assoc:.1e}, vs oracle {worst_oracle:.1e}"))
}

// ---- planar criteria ----

fn random_polygon(rng: &mut ChaCha8Rng) -> Result<(Vec<Complex64>, PlaneCurve), String> {
    let sides = rng.gen_range(3..10);
    let mut angles: Vec<f64> = (0..sides).map(|_| rng.gen_range(0.0..TAU)).collect();
    angles.sort_by(f64::total_cmp);
    let center = c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
    let vertices: Vec<Complex64> = angles
        .iter()
        .map(|&t| center + Complex64::from_polar(rng.gen_range(0.4..1.6), t))
        .collect();
    let curve = lib(PlaneCurve::polygon(&vertices, 1.0))?;
    Ok((vertices, curve))
}

/// Even-odd ray casting.
fn point_in_polygon(v: &[Complex64], z: Complex64) -> bool {
    let mut inside = false;
    for k in 0..v.len() {
        let (a, b) = (v[k], v[(k + 1) % v.len()]);
        if (a.im > z.im) != (b.im > z.im) && z.re < a.re + (z.im - a.im) * (b.re - a.re) / (b.im - a.im) {
            inside = !inside;
        }
    }
    inside
}

fn segment_distance(a: Complex64, b: Complex64, z: Complex64) -> f64 {
    let t = ((z - a) * (b - a).conj()).re / (b - a).norm_sqr();
    (a + (b - a) * t.clamp(0.0, 1.0) - z).norm()
}

fn criterion_closed_polygons(rng: &mut ChaCha8Rng, spec: &QuadratureSpec) -> Outcome {
    let mut worst: f64 = 0.0;
    let (mut inside, mut outside) = (0, 0);
    for _ in 0..20 {
        let (v, polygon) = random_polygon(rng)?;
        let edges: Vec<(Complex64, Complex64)> = (0..v.len()).map(|k| (v[k], v[(k + 1) % v.len()])).collect();
        let length: f64 = edges.iter().map(|(a, b)| (b - a).norm()).sum();
        let (mut want_in, mut want_out) = (10, 10);
        while want_in + want_out > 0 {
            let z = c(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5));
            let d = edges.iter().map(|&(a, b)| segment_distance(a, b, z)).fold(f64::INFINITY, f64::min);
            if d < 1e-3 {
                continue;
            }
            let slot = if point_in_polygon(&v, z) { &mut want_in } else { &mut want_out };
            if *slot == 0 {
                continue;
            }
            *slot -= 1;
            let value = lib(cauchy_squared(&polygon, MeasureKind::ComplexForm, z, spec))?;
            worst = worst.max(value.norm() * d * d / length);
        }
        inside += 10;
        outside += 10;
    }
    ensure(worst <= 1e-9, format!("scaled |I| = {worst:e}"))?;
    Ok(format!("max |I| dist^2/length {worst:.1e} over {inside} interior + {outside} exterior points"))
}

fn criterion_segments(rng: &mut ChaCha8Rng, spec: &QuadratureSpec) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    while count < 100 {
        let a = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let b = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if (b - a).norm() < 1e-2 || segment_distance(a, b, z) < 1e-3 {
            continue;
        }
        count += 1;
        let segment = lib(PlaneCurve::polyline(&[a, b], 1.0))?;
        let numeric = lib(cauchy_squared(&segment, MeasureKind::ComplexForm, z, spec))?;
        let exact = 1.0 / (z - b) - 1.0 / (z - a);
        worst = worst.max(rel(numeric, exact));
    }
    ensure(worst <= 1e-9, format!("relative error {worst:e}"))?;
    let spot = lib(PlaneCurve::polyline(&[c(-1.0, 0.0), c(1.0, 0.0)], 1.0))?;
    let v = lib(cauchy_squared(&spot, MeasureKind::ComplexForm, Complex64::i(), spec))?;
    ensure((v + 1.0).norm() <= 1e-9, format!("spot value {v}"))?;
    Ok(format!("max relative error {worst:.1e}, spot value {:.1e} from -1", (v + 1.0).norm()))
}

fn criterion_circle(rng: &mut ChaCha8Rng, spec: &QuadratureSpec) -> Outcome {
    let circle = lib(PlaneCurve::circle(c(0.0, 0.0), 1.0, 1.0))?;
    let mut worst_in: f64 = 0.0;
    let mut worst_out: f64 = 0.0;
    for _ in 0..20 {
        let z = Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..TAU));
        worst_in = worst_in.max(lib(inverse_weighted_integral(&circle, z, spec))?.norm());
        let w = Complex64::from_polar(rng.gen_range(1.1..5.0), rng.gen_range(0.0..TAU));
        let exact = Complex64::new(0.0, TAU) / (w * w);
        worst_out = worst_out.max(rel(lib(inverse_weighted_integral(&circle, w, spec))?, exact));
    }
    let origin = lib(inverse_weighted_integral(&circle, c(0.0, 0.0), spec))?.norm();
    ensure(worst_in <= 1e-8, format!("interior |value| {worst_in:e}"))?;
    ensure(worst_out <= 1e-8, format!("exterior relative error {worst_out:e}"))?;
    ensure(origin <= 1e-8, format!("value at 0 is {origin:e}"))?;
    Ok(format!("interior {worst_in:.1e}, exterior rel {worst_out:.1e}, origin {origin:.1e}"))
}

/// `|p-a|/(p-a) - |b-p|/(b-p)`: the jump of the reciprocal unit tangent.
fn corner_oracle(a: Complex64, p: Complex64, b: Complex64) -> Complex64 {
    (p - a).norm() / (p - a) - (b - p).norm() / (b - p)
}

fn criterion_corners(rng: &mut ChaCha8Rng, spec: &QuadratureSpec) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    while count < 10 {
        let p = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let a = p + Complex64::from_polar(rng.gen_range(0.3..2.0), rng.gen_range(0.0..TAU));
        let b = p + Complex64::from_polar(rng.gen_range(0.3..2.0), rng.gen_range(0.0..TAU));
        let exact = corner_oracle(a, p, b);
        // skip nearly straight or folded-back corners where c1 - c2 is tiny or the arms overlap
        if exact.norm() < 0.05 || exact.norm() > 1.99 {
            continue;
        }
        count += 1;
        let curve = lib(PlaneCurve::polyline(&[a, p, b], 1.0))?;
        let fit = lib(residue_fit(&curve, p, MeasureKind::Arclength, spec))?;
        worst = worst.max(rel(fit.coefficient, exact));
    }
    ensure(worst <= 1e-4, format!("relative error {worst:e}"))?;

    // interior angle from π/2 to π: fitted |c1 - c2| must shrink at every step
    let p = c(0.0, 0.0);
    let mut mags = Vec::new();
    for k in 0..=10 {
        let angle = FRAC_PI_2 + FRAC_PI_2 * k as f64 / 10.0;
        let curve = lib(PlaneCurve::polyline(&[Complex64::from_polar(1.0, angle), p, c(1.0, 0.0)], 1.0))?;
        mags.push(lib(residue_fit(&curve, p, MeasureKind::Arclength, spec))?.coefficient.norm());
    }
    ensure(mags.windows(2).all(|w| w[1] < w[0]), format!("not monotone: {mags:?}"))?;
    ensure(mags[10] <= 1e-6, format!("straight angle residue {:e}", mags[10]))?;
    Ok(format!("max relative error {worst:.1e}; sweep {:.3} -> {:.1e}", mags[0], mags[10]))
}

fn criterion_rays(rng: &mut ChaCha8Rng, spec: &QuadratureSpec) -> Outcome {
    let apex = c(0.3, -0.2);
    let fan = lib(RayFan::from_angles(apex, &[0.4, 0.4 + TAU / 3.0, 0.4 + 2.0 * TAU / 3.0], 1.7))?;
    let analytic: Complex64 = fan.rays().iter().map(|&(dir, rho)| -rho / dir).sum();
    let constant = fan.balance_constant();
    ensure(constant.norm() <= 1e-12, format!("balance constant {constant}"))?;
    ensure((constant - analytic).norm() <= 1e-12, format!("balance {constant} vs oracle {analytic}"))?;
    let fit = lib(residue_fit(&lib(fan.to_curve())?, apex, MeasureKind::Weighted, spec))?;
    ensure(fit.coefficient.norm() <= 1e-6, format!("fitted residue {}", fit.coefficient))?;

    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let q = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let tau = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
        let rho = rng.gen_range(0.2..3.0);
        let ray = lib(RayFan::new(q, vec![(tau, rho)]))?;
        let curve = lib(ray.to_curve())?;
        ensure(
            (ray.balance_constant() + rho / tau).norm() <= 1e-12,
            format!("single-ray constant {}", ray.balance_constant()),
        )?;
        let z = loop {
            let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if curve.distance_to(z) > 0.05 {
                break z;
            }
        };
        let numeric = lib(cauchy_squared(&curve, MeasureKind::Weighted, z, spec))?;
        worst = worst.max(rel(numeric, -rho / tau / (z - q)));
    }
    ensure(worst <= 1e-8, format!("single ray relative error {worst:e}"))?;
    Ok(format!("balance {:.1e}, fit {:.1e}, single ray {worst:.1e}", constant.norm(), fit.coefficient.norm()))
}

fn criterion_line(spec: &QuadratureSpec) -> Outcome {
    let line = lib(PlaneCurve::line(c(0.0, 0.0), c(1.0, 0.0), 1.0))?;
    // Tightening both tolerances drives the truncated integral to 0. Its size is
    // bounded by the two discarded tails plus the quadrature error budget
    // rel_tol * int |f| = rel_tol * π/|y|.
    let mut worst_flat: f64 = 0.0;
    for tol in [1e-6, 1e-8, 1e-10] {
        let spec = QuadratureSpec {
            rel_tol: tol,
            ray_truncation_tol: tol,
            ..spec.clone()
        };
        for y in [0.5, 1.0, 2.0] {
            let flat = lib(cauchy_squared(&line, MeasureKind::Arclength, c(0.0, y), &spec))?;
            let bound = 2.0 * tol + tol * PI / y;
            ensure(flat.norm() <= bound, format!("tol {tol:e}, y {y}: |I| = {:e} > {bound:e}", flat.norm()))?;
            worst_flat = worst_flat.max(flat.norm() / bound);
        }
    }
    let mut worst_mass: f64 = 0.0;
    for y in [0.5, 1.0, 2.0] {
        let mass = lib(mass_integral(&line, c(0.0, y), spec))?;
        worst_mass = worst_mass.max((mass * y - PI).abs());
    }
    ensure(worst_mass <= 1e-6, format!("|mass |y| - π| = {worst_mass:e}"))?;
    Ok(format!("|I| <= {worst_flat:.2} x tail+quadrature bound, mass error {worst_mass:.1e}"))
}

// ---- Clifford criteria ----

type Field = fn(&[f64]) -> f64;

/// Scalar fields with hand-computed Laplacians; chosen with large fourth
/// derivatives so truncation dominates rounding down to `h = 1e-4`.
fn laplacian_fields() -> Vec<(&'static str, Field, Field)> {
    vec![
        ("sin(8x)sinh(5y)cos(6z)", |x| (8.0 * x[0]).sin() * (5.0 * x[1]).sinh() * (6.0 * x[2]).cos(), |x| {
            (-64.0 + 25.0 - 36.0) * (8.0 * x[0]).sin() * (5.0 * x[1]).sinh() * (6.0 * x[2]).cos()
        }),
        ("exp(-20|x|^2)", |x| (-20.0 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])).exp(), |x| {
            let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            (1600.0 * r2 - 120.0) * (-20.0 * r2).exp()
        }),
        ("x^4 - 3 y^2 z^2 + x z^3", |x| x[0].powi(4) - 3.0 * x[1] * x[1] * x[2] * x[2] + x[0] * x[2].powi(3), |x| {
            12.0 * x[0] * x[0] - 6.0 * x[2] * x[2] - 6.0 * x[1] * x[1] + 6.0 * x[0] * x[2]
        }),
    ]
}

fn slope(errs: &[f64]) -> f64 {
    errs.windows(2).map(|w| (w[0] / w[1]).log10()).fold(f64::INFINITY, f64::min)
}

fn criterion_dirac() -> Outcome {
    let steps = [1e-2, 1e-3, 1e-4];
    let x0 = [0.41, -0.27, 0.33];
    let mut worst_slope = f64::INFINITY;
    for (name, f, lap) in laplacian_fields() {
        // put the scalar field on the bivector e1e3 to exercise left multiplication
        let blade = BasisBlade::from_mask(0b101);
        let field = move |x: &[f64]| Multivector::from_blade(3, blade, f(x)).expect("dim 3");
        let expected = lib(Multivector::from_blade(3, blade, -lap(&x0)))?;
        let mut errs = Vec::new();
        for h in steps {
            let d2 = lib(dirac_squared(field, &x0, &DiracSpec::with_step(h)))?;
            errs.push(lib(d2.max_abs_diff(&expected))?);
        }
        let s = slope(&errs);
        ensure(s >= 1.9, format!("{name}: slope {s:.3}, errors {errs:?}"))?;
        worst_slope = worst_slope.min(s);
    }
    let (x, y) = ([0.8, -0.3, 0.6], [0.1, 0.2, -0.1]);
    let mut errs = Vec::new();
    for h in steps {
        errs.push(lib(kernel_dirac_residual(&x, &y, &DiracSpec::with_step(h)))?.norm());
    }
    let kernel_slope = slope(&errs);
    ensure(kernel_slope >= 1.9, format!("|D E| slope {kernel_slope:.3}, residuals {errs:?}"))?;
    Ok(format!("D^2 slope >= {worst_slope:.3}, |D E| slope {kernel_slope:.3}"))
}

fn criterion_surface() -> Outcome {
    let four_pi = 4.0 * PI;
    let sphere = lib(mesh_sphere([0.0; 3], 1.0, 4))?;
    let center = lib(surface_cauchy_integral(&sphere, &[0.0; 3]))?;
    let err_center = (center.scalar_part() - four_pi).abs() / four_pi;
    ensure(err_center <= 1e-2, format!("interior value {center}"))?;

    let interior_points = [
        [0.3, 0.1, -0.2],
        [-0.4, 0.25, 0.1],
        [0.05, -0.5, 0.3],
        [0.2, 0.2, 0.45],
        [-0.1, -0.15, -0.55],
        [0.5, -0.3, 0.0],
    ];
    let scalars: Vec<f64> = interior_points
        .iter()
        .map(|x| lib(surface_cauchy_integral(&sphere, x)).map(|v| v.scalar_part()))
        .collect::<Result<_, _>>()?;
    let mean = scalars.iter().sum::<f64>() / scalars.len() as f64;
    let std = (scalars.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / scalars.len() as f64).sqrt();
    ensure(std / mean <= 1e-2, format!("interior spread {:e}", std / mean))?;

    let mut exterior: f64 = 0.0;
    for x in [[2.0, 0.0, 0.0], [0.0, -3.0, 1.0], [1.2, 1.1, -0.9]] {
        exterior = exterior.max(lib(surface_cauchy_integral(&sphere, &x))?.norm());
    }
    ensure(exterior <= 1e-3 * four_pi, format!("exterior magnitude {exterior:e}"))?;

    let x = [1.7, 0.4, -0.3];
    let mut mags = Vec::new();
    for level in 1..=4 {
        let mesh = lib(mesh_sphere([0.0; 3], 1.0, level))?;
        let mut total: f64 = 0.0;
        for axis in 0..3 {
            total += lib(surface_derivative_integral(&mesh, SurfaceWeight::Normal, &x, axis))?.norm();
        }
        mags.push(total);
    }
    ensure(mags.windows(2).all(|w| w[1] < w[0]), format!("derivative integral not decreasing: {mags:?}"))?;
    ensure(mags[3] <= 1e-2 * four_pi, format!("level-4 derivative integral {:e}", mags[3]))?;
    Ok(format!(
        "center rel {err_center:.1e}, spread {:.1e}, exterior {exterior:.1e}, derivative {:.1e}",
        std / mean,
        mags[3]
    ))
}

fn criterion_potential(rng: &mut ChaCha8Rng) -> Outcome {
    let mut report = Vec::new();
    for n in 2..=4 {
        // E = k D phi with phi = log|x| (n = 2) or |x|^(2-n); by hand, k = 1 resp. 1/(2-n)
        let oracle = if n == 2 { 1.0 } else { 1.0 / (2.0 - n as f64) };
        let mut ratios = Vec::new();
        for _ in 0..20 {
            let x: Vec<f64> = loop {
                let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
                if x.iter().map(|v| v * v).sum::<f64>() > 0.25 {
                    break x;
                }
            };
            ratios.push(lib(check_kernel_potential(&x, &DiracSpec::default()))?);
        }
        let spread = ratios.iter().fold(f64::NEG_INFINITY, |m, r| m.max(*r))
            - ratios.iter().fold(f64::INFINITY, |m, r| m.min(*r));
        let off = ratios.iter().map(|r| (r - oracle).abs()).fold(0.0, f64::max);
        ensure(spread <= 1e-6 && off <= 1e-6, format!("n={n}: spread {spread:e}, off oracle {off:e}"))?;
        report.push(format!("n={n} spread {spread:.1e}"));
    }
    Ok(report.join(", "))
}

fn gate(name: &str, limit: Duration, criterion: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = criterion();
    let elapsed = start.elapsed();
    let outcome = match outcome {
        Ok(msg) if elapsed > limit => Err(format!("{msg}; runtime over limit")),
        other => other,
    };
    let (status, msg) = match &outcome {
        Ok(msg) => ("PASS", msg),
        Err(msg) => ("FAIL", msg),
    };
    println!("{status} criterion {name} [{elapsed:.2?} of {limit:?}]: {msg}");
    outcome.is_ok()
}

fn main() -> ExitCode {
    let spec = QuadratureSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(20261016);
    let secs = Duration::from_secs;
    let results = [
        gate("1 algebra exactness", secs(1), || criterion_algebra(&mut rng)),
        gate("2 closed-curve vanishing", secs(5), || criterion_closed_polygons(&mut rng, &spec)),
        gate("3 segment oracle", secs(2), || criterion_segments(&mut rng, &spec)),
        gate("4 circle dichotomy", secs(2), || criterion_circle(&mut rng, &spec)),
        gate("5 corner residue", secs(5), || criterion_corners(&mut rng, &spec)),
        gate("6 ray balancing", secs(3), || criterion_rays(&mut rng, &spec)),
        gate("7 line flatness", secs(2), || criterion_line(&spec)),
        gate("8 Dirac identities", secs(3), criterion_dirac),
        gate("9 surface Cauchy integral", secs(30), criterion_surface),
        gate("10 kernel-potential identity", secs(1), || criterion_potential(&mut rng)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed} of {} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
