//! `loglap`: kernel tables, operator evaluation and the verification suites.
//!
//! Exit codes: 0 success, 1 failed verification or i/o error, 2 bad
//! arguments, 3 quadrature that did not converge.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use loglap::euclid::{
    frac_bochner_point, frac_pointwise, log_bochner_point, log_pointwise, multiplier_points, HybridConfig, Operator,
    TestFunction,
};
use loglap::hyperbolic::{
    kernel_config, linear_grid, log_bochner_h, log_grid, log_pointwise_h, HyperRadialFunction, KernelKind, KernelRoute,
    KernelTable, Space,
};
use loglap::quad::QuadratureConfig;
use loglap::verify::{run, Suite};
use loglap::{io, Error};

#[derive(Parser)]
#[command(name = "loglap", version, about = "Fractional and logarithmic Laplacians: kernels, operators, checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a radial kernel to CSV with a JSON sidecar.
    Kernel(KernelArgs),
    /// Apply log(-Δ) or (-Δ)^s to a registered function at given points.
    Apply(ApplyArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Euclid,
    Hyperbolic,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::Euclid => Space::Euclidean,
            SpaceArg::Hyperbolic => Space::Hyperbolic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Frac,
    Log1,
    Log2,
    Heat,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    TimeQuadrature,
    BesselClosedForm,
    TermAlgebra,
    ClosedForm,
    RadialIntegral,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Linear,
    Log,
}

#[derive(Parser)]
struct KernelArgs {
    #[arg(long, value_enum)]
    space: SpaceArg,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    /// Fractional order, required for `frac`.
    #[arg(long)]
    s: Option<f64>,
    /// Time, required for `heat`.
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    r_min: f64,
    #[arg(long, default_value_t = 8.0)]
    r_max: f64,
    #[arg(long, default_value_t = 64)]
    points: usize,
    /// Grid spacing; log spacing needs `r_min > 0`.
    #[arg(long, value_enum, default_value = "linear")]
    grid: GridArg,
    #[arg(long, value_enum)]
    route: Option<RouteArg>,
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OpArg {
    Log,
    Frac,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ApplyRoute {
    Pointwise,
    Bochner,
    Multiplier,
}

#[derive(Parser)]
struct ApplyArgs {
    #[arg(long, value_enum, default_value = "euclid")]
    space: SpaceArg,
    #[arg(long, value_enum)]
    op: OpArg,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long, value_enum, default_value = "pointwise")]
    route: ApplyRoute,
    /// Function id: gaussian, bump, plateau, tent, zero (hyperbolic: bump, tent, zero).
    #[arg(long = "fn")]
    function: String,
    #[arg(long)]
    n: usize,
    /// Support radius of the hyperbolic test function.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// A point as comma-separated coordinates (Euclidean) or a distance
    /// from the centre (hyperbolic); repeatable.
    #[arg(long = "at", allow_hyphen_values = true)]
    at: Vec<String>,
    /// CSV of points, one per row, `n` columns (Euclidean) or one (hyperbolic), with a header.
    #[arg(long)]
    points_file: Option<PathBuf>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Parser)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    json_out: Option<PathBuf>,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonConvergence { .. } => 3,
            Error::Domain { .. } | Error::RouteMismatch { .. } | Error::SmoothnessTooLow { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = configure_workers() {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code);
    }
    let result = match cli.command {
        Command::Kernel(a) => cmd_kernel(a),
        Command::Apply(a) => cmd_apply(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// `LOGLAP_WORKERS` sets the size of the worker pool; default is all cores.
fn configure_workers() -> Result<(), Failure> {
    let Ok(v) = std::env::var("LOGLAP_WORKERS") else {
        return Ok(());
    };
    let workers: usize = v
        .parse()
        .ok()
        .filter(|&w| w > 0)
        .ok_or_else(|| usage(format!("LOGLAP_WORKERS must be a positive integer, got `{v}`")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| usage(e.to_string()))?;
    #[cfg(not(feature = "parallel"))]
    let _ = workers;
    Ok(())
}

fn cmd_kernel(a: KernelArgs) -> Result<u8, Failure> {
    let (kind, parameter) = match a.kind {
        KindArg::Frac => (KernelKind::Frac, Some(a.s.ok_or_else(|| usage("--kind frac needs --s"))?)),
        KindArg::Heat => (KernelKind::Heat, Some(a.t.ok_or_else(|| usage("--kind heat needs --t"))?)),
        KindArg::Log1 => (KernelKind::Log1, None),
        KindArg::Log2 => (KernelKind::Log2, None),
    };
    let grid = match a.grid {
        GridArg::Linear => linear_grid(a.r_min, a.r_max, a.points)?,
        GridArg::Log => log_grid(a.r_min, a.r_max, a.points)?,
    };
    let route = a.route.map(|r| match r {
        RouteArg::TimeQuadrature => KernelRoute::TimeQuadrature,
        RouteArg::BesselClosedForm => KernelRoute::BesselClosedForm,
        RouteArg::TermAlgebra => KernelRoute::TermAlgebra,
        RouteArg::ClosedForm => KernelRoute::ClosedForm,
        RouteArg::RadialIntegral => KernelRoute::RadialIntegral,
    });
    let table = KernelTable::build(a.space.into(), kind, a.n, parameter, &grid, route, &kernel_config())?;
    table.write(&a.out)?;
    println!("wrote {} rows to {}", table.len(), a.out.display());
    Ok(0)
}

fn parse_point(s: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|c| c.trim().parse::<f64>().map_err(|e| usage(format!("bad coordinate `{c}`: {e}"))))
        .collect()
}

fn read_points(path: &Path) -> Result<Vec<Vec<f64>>, Failure> {
    Ok(io::read_csv(path)?.1)
}

fn cmd_apply(a: ApplyArgs) -> Result<u8, Failure> {
    let s = match a.op {
        OpArg::Frac => {
            let s = a.s.ok_or_else(|| usage("--op frac needs --s"))?;
            if !(s > 0.0 && s < 1.0) {
                return Err(usage(format!("--s must lie in (0, 1), got {s}")));
            }
            Some(s)
        }
        OpArg::Log => None,
    };
    let mut points = a.at.iter().map(|p| parse_point(p)).collect::<Result<Vec<_>, _>>()?;
    if let Some(p) = &a.points_file {
        points.extend(read_points(p)?);
    }
    if points.is_empty() {
        return Err(usage("give at least one point with --at or --points-file"));
    }
    let cfg = QuadratureConfig::new(1e-12, 1e-10, 4000, 1.0)?;
    let (values, width) = match a.space {
        SpaceArg::Euclid => {
            let f = TestFunction::by_id(&a.function, a.n).map_err(|e| usage(e.to_string()))?;
            if let Some(p) = points.iter().find(|p| p.len() != a.n) {
                return Err(usage(format!("point {p:?} does not have {} coordinates", a.n)));
            }
            let values = match (a.route, s) {
                (ApplyRoute::Multiplier, _) => {
                    let op = s.map_or(Operator::Log, Operator::Frac);
                    multiplier_points(&f, &points, op, &HybridConfig::for_function(&f))?
                }
                (route, s) => points
                    .iter()
                    .map(|x| match (route, s) {
                        (ApplyRoute::Pointwise, None) => log_pointwise(&f, x),
                        (ApplyRoute::Pointwise, Some(s)) => frac_pointwise(&f, x, s),
                        (_, None) => log_bochner_point(&f, x, &cfg),
                        (_, Some(s)) => frac_bochner_point(&f, x, s, &cfg),
                    })
                    .collect::<loglap::Result<Vec<_>>>()?,
            };
            (values, a.n)
        }
        SpaceArg::Hyperbolic => {
            if s.is_some() {
                return Err(usage("on hyperbolic space only --op log is available"));
            }
            let f = match a.function.as_str() {
                "bump" => HyperRadialFunction::bump(a.radius)?,
                "tent" => HyperRadialFunction::tent(a.radius)?,
                "zero" => HyperRadialFunction::zero(),
                other => return Err(usage(format!("unknown hyperbolic function `{other}`"))),
            };
            if points.iter().any(|p| p.len() != 1) {
                return Err(usage("hyperbolic points are single distances"));
            }
            let values = points
                .iter()
                .map(|p| match a.route {
                    ApplyRoute::Pointwise => log_pointwise_h(a.n, &f, p[0]),
                    ApplyRoute::Bochner => log_bochner_h(a.n, &f, p[0], &cfg),
                    ApplyRoute::Multiplier => Err(Error::RouteMismatch { route: "multiplier", n: a.n }),
                })
                .collect::<loglap::Result<Vec<_>>>()?;
            (values, 1)
        }
    };
    for (p, v) in points.iter().zip(&values) {
        println!("{} {v}", p.iter().map(f64::to_string).collect::<Vec<_>>().join(","));
    }
    if let Some(out) = &a.out {
        let mut header: Vec<String> = (0..width).map(|i| format!("x{i}")).collect();
        header.push("value".into());
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let rows: Vec<Vec<f64>> = points
            .iter()
            .zip(&values)
            .map(|(p, &v)| p.iter().copied().chain([v]).collect())
            .collect();
        io::write_csv(out, &header, &rows)?;
        let route = match a.route {
            ApplyRoute::Pointwise => "pointwise",
            ApplyRoute::Bochner => "bochner",
            ApplyRoute::Multiplier => "multiplier",
        };
        let meta = json!({
            "space": match a.space { SpaceArg::Euclid => "euclidean", SpaceArg::Hyperbolic => "hyperbolic" },
            "op": match a.op { OpArg::Log => "log", OpArg::Frac => "frac" },
            "s": s,
            "route": route,
            "function": a.function,
            "n": a.n,
            "rows": rows.len(),
        });
        io::write_json(&io::sidecar_path(out), &meta)?;
    }
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let suite: Suite = a.suite.parse().map_err(|e: Error| usage(e.to_string()))?;
    let report = run(suite);
    for c in &report.checks {
        println!(
            "{} {:<34} {:>12.4e} <= {:.1e}  {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            c.measured,
            c.bound,
            c.description
        );
    }
    let failed = report.failures().count();
    println!(
        "{}: {} checks, {} failed, {} ms",
        suite.name(),
        report.checks.len(),
        failed,
        report.wall_time_ms
    );
    if let Some(p) = &a.json_out {
        io::write_json(p, &report)?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
