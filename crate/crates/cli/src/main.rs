use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cauchy_curvature::field::evaluate_field;
use cauchy_curvature::geometry::{PlaneCurve, QuadratureSpec};
use cauchy_curvature::plane::{analytic_residue, residue_fit, MeasureKind, RayFan};
use cauchy_curvature::scene::Scene;
use cauchy_curvature::verify::{run_suite, Suite};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

/// Residues agree with their analytic value to this relative tolerance.
const RESIDUE_TOL: f64 = 1e-4;
const BALANCE_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(name = "ccurv", version, about = "Cauchy-type curvature integrals and Clifford kernels")]
struct Cli {
    /// Scene file (JSON)
    #[arg(long, global = true)]
    scene: Option<PathBuf>,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Override the quadrature relative tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads for grid evaluation
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the randomized property suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Algebra,
    Plane,
    Clifford,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite
    Verify { suite: SuiteArg },
    /// Sample the scene's integral over its grid
    Field {
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Fit the residue at a vertex of the scene's curves
    Residue {
        /// Vertex as `x,y`
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Balance constant of the ray fans in the scene
    Balance,
}

enum Failure {
    Check(String),
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn load_scene(cli: &Cli) -> Result<Scene, Failure> {
    let path = cli
        .scene
        .as_deref()
        .ok_or_else(|| Failure::Usage("this command needs --scene PATH".into()))?;
    let mut scene = Scene::load(path).map_err(usage)?;
    if let Some(tol) = cli.tol {
        scene.quadrature.rel_tol = tol;
        scene.quadrature.validate().map_err(usage)?;
    }
    Ok(scene)
}

fn parse_point(text: &str) -> Result<Complex64, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [x, y] => {
            let x: f64 = x.parse().map_err(|_| usage(format!("bad point coordinate `{x}`")))?;
            let y: f64 = y.parse().map_err(|_| usage(format!("bad point coordinate `{y}`")))?;
            Ok(Complex64::new(x, y))
        }
        _ => Err(usage(format!("point must be `x,y`, got `{text}`"))),
    }
}

fn show(c: Complex64) -> String {
    format!("{:.10e} {} {:.10e}i", c.re, if c.im < 0.0 { '-' } else { '+' }, c.im.abs())
}

fn cmd_verify(cli: &Cli, suite: SuiteArg) -> Outcome {
    let mut spec = match &cli.scene {
        Some(_) => load_scene(cli)?.quadrature,
        None => QuadratureSpec::default(),
    };
    if let Some(tol) = cli.tol {
        spec.rel_tol = tol;
    }
    let suite = match suite {
        SuiteArg::Algebra => Suite::Algebra,
        SuiteArg::Plane => Suite::Plane,
        SuiteArg::Clifford => Suite::Clifford,
        SuiteArg::All => Suite::All,
    };
    let report = run_suite(suite, cli.seed, &spec).map_err(usage)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("{report}");
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} check(s) failed", report.failures())))
    }
}

/// Writes through a temporary file in the target directory so readers never
/// see a partial file.
fn write_atomically(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn cmd_field(cli: &Cli, out: Option<&Path>, format: Format) -> Outcome {
    let scene = load_scene(cli)?;
    let field = evaluate_field(&scene).map_err(usage)?;
    let mut bytes = Vec::new();
    match format {
        Format::Csv => field.write_csv(&mut bytes).map_err(usage)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut bytes, &field.to_json()).map_err(usage)?;
            bytes.push(b'\n');
        }
    }
    match out {
        Some(path) => write_atomically(path, &bytes).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => std::io::stdout().write_all(&bytes).map_err(usage)?,
    }
    let failures = field.failures();
    if failures > 0 {
        eprintln!("warning: {failures} of {} grid points failed to evaluate", field.values.len());
    }
    Ok(())
}

fn scene_measure(scene: &Scene) -> MeasureKind {
    scene.integral.and_then(|i| i.measure()).unwrap_or_default()
}

fn cmd_residue(cli: &Cli, point: &str) -> Outcome {
    let scene = load_scene(cli)?;
    let q = parse_point(point)?;
    let curves = scene.plane_curves().map_err(usage)?;
    let measure = scene_measure(&scene);
    let curve = curves
        .iter()
        .find(|c| c.is_vertex(q))
        .ok_or_else(|| usage(format!("{} is not a marked point of the scene", show(q))))?;
    let fit = residue_fit(curve, q, measure, &scene.quadrature).map_err(usage)?;
    let analytic = analytic_residue(curve, q, measure);
    let error = analytic.map(|a| (fit.coefficient - a).norm() / a.norm().max(1.0));
    if cli.json {
        let report = json!({
            "point": [q.re, q.im],
            "measure": measure,
            "coefficient": [fit.coefficient.re, fit.coefficient.im],
            "radius": fit.radius,
            "rms_residual": fit.rms_residual,
            "analytic": analytic.map(|a| [a.re, a.im]),
            "error": error,
            "quadrature": scene.quadrature,
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("residue at {}: {}", show(q), show(fit.coefficient));
        println!("sample radius {:e}, rms misfit {:e}", fit.radius, fit.rms_residual);
        if let (Some(a), Some(e)) = (analytic, error) {
            println!("analytic {}, relative error {e:e}", show(a));
        }
    }
    match error {
        Some(e) if !(e <= RESIDUE_TOL) => Err(Failure::Check(format!("residue off by {e:e}"))),
        _ => Ok(()),
    }
}

fn cmd_balance(cli: &Cli) -> Outcome {
    let scene = load_scene(cli)?;
    let curves = scene.plane_curves().map_err(usage)?;
    let fans: Vec<(RayFan, &PlaneCurve)> = curves
        .iter()
        .filter_map(|c| RayFan::from_curve(c).map(|f| (f, c)))
        .collect();
    if fans.is_empty() {
        return Err(usage("scene has no ray fan (rays sharing one apex)"));
    }
    let mut records = Vec::new();
    let mut worst: f64 = 0.0;
    for (fan, curve) in &fans {
        let constant = fan.balance_constant();
        let fit = residue_fit(curve, fan.apex(), MeasureKind::Weighted, &scene.quadrature).map_err(usage)?;
        let error = (fit.coefficient - constant).norm() / constant.norm().max(1.0);
        worst = worst.max(error);
        records.push((fan.apex(), constant, fit.coefficient, error));
    }
    if cli.json {
        let list: Vec<_> = records
            .iter()
            .map(|(apex, c, f, e)| {
                json!({"apex": [apex.re, apex.im], "balance": [c.re, c.im], "fitted": [f.re, f.im], "error": e})
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({"fans": list, "quadrature": scene.quadrature})).expect("report serializes"));
    } else {
        for (apex, c, f, e) in &records {
            println!("fan at {}: balance {}, fitted {}, error {e:e}", show(*apex), show(*c), show(*f));
        }
    }
    if worst <= BALANCE_TOL {
        Ok(())
    } else {
        Err(Failure::Check(format!("fitted residue off by {worst:e}")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match &cli.command {
        Command::Verify { suite } => cmd_verify(&cli, *suite),
        Command::Field { out, format } => cmd_field(&cli, out.as_deref(), *format),
        Command::Residue { point } => cmd_residue(&cli, point),
        Command::Balance => cmd_balance(&cli),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
