mod output;
mod scalar;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use hankel_core::hankel::{hankel_image, hankel_transform};
use hankel_core::intertwiners::{m_transform, TTransform};
use hankel_core::kfinite::{basis_vector, gram, gram_deviation};
use hankel_core::suite::{self, Suite, SuiteConfig, SuiteReport};
use hankel_core::{parse_spec, ComplexOrder, Error, Grid, InducedFunction};

use output::{csv_table, destination, emit, float, json_text, Format};

const VERSION: &str = env!("CARGO_PKG_VERSION");
const DEFAULT_GRID: &str = "log:1e-4:50:512";

#[derive(Parser, Debug)]
#[command(name = "hankel", version, about = "Complex-order Hankel transforms and discrete-series models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply a transform to a function spec and print (x, Re, Im) rows.
    Transform(TransformArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Sample the K-finite basis and check its Gram matrix.
    Basis(BasisArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Operation {
    /// H_ν by quadrature.
    Hankel,
    /// H_ν through Weber's closed form.
    HankelExact,
    /// T_ν in closed form.
    T,
    /// M_d applied to T_d f, by quadrature.
    M,
}

#[derive(Args, Debug)]
struct TransformArgs {
    /// Order ν, written a, bi or a+bi.
    #[arg(long, allow_hyphen_values = true, value_parser = scalar::parse_complex)]
    nu: Complex64,
    /// Function spec, e.g. "(2,0)*x^1*exp(-0.5x) + exp(-2x)*osc(1x)".
    #[arg(long)]
    spec: String,
    #[arg(long, default_value = DEFAULT_GRID)]
    grid: String,
    #[arg(long, value_enum, default_value = "hankel")]
    op: Operation,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// csv, json, or a file path.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, allow_hyphen_values = true, value_parser = scalar::parse_complex)]
    nu: Option<Complex64>,
    #[arg(long)]
    d: Option<u32>,
    /// Overrides every check's default bound.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = DEFAULT_GRID)]
    grid: String,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct BasisArgs {
    #[arg(long)]
    d: u32,
    /// Largest index n.
    #[arg(long, default_value_t = 5)]
    n: u32,
    #[arg(long, default_value = "lin:0.01:20:200")]
    grid: String,
    /// Bound on max |G − I|.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Also check H_d(e₀) = e₀ by quadrature.
    #[arg(long)]
    check_hankel_fixed_point: bool,
    #[arg(long)]
    out: Option<String>,
}

/// Exit codes: 1 failed check, 2 bad input, 3 numerical failure.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::Semantic(_) | Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Transform(args) => transform(&args),
        Command::Verify(args) => verify(&args),
        Command::Basis(args) => basis(&args),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Usage(m) => (2, m),
                Failure::Numerical(m) => (3, m),
                Failure::Io(m) => (3, format!("cannot write output: {m}")),
            };
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("HANKEL_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("HANKEL_THREADS must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_grid(text: &str) -> Result<Grid, Failure> {
    let grid: Grid = text.parse()?;
    grid.points()?;
    Ok(grid)
}

fn positive(name: &str, v: f64) -> Result<f64, Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::Usage(format!("{name} must be positive, got {v}")))
    }
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn transform(args: &TransformArgs) -> Result<bool, Failure> {
    let tol = positive("--tol", args.tol)?;
    let nu = ComplexOrder::new(args.nu)?;
    let grid = parse_grid(&args.grid)?;
    let f = parse_spec(&args.spec, nu)?;
    let points = grid.points()?;
    let values: Vec<Complex64> = match args.op {
        Operation::Hankel => hankel_transform(&f, &grid, tol)?.values().to_vec(),
        Operation::HankelExact => {
            let h = hankel_image(&f);
            points.iter().map(|&y| h.evaluate(y)).collect::<Result<_, _>>()?
        }
        Operation::T => {
            let t = TTransform::new(&f)?;
            points.iter().map(|&z| t.evaluate(z)).collect()
        }
        Operation::M => {
            let phi = InducedFunction::from_profile(&f)?;
            points.par_iter().map(|&y| m_transform(&phi, y, tol)).collect::<Result<_, _>>()?
        }
    };
    let dest = destination(args.out.as_deref(), Format::Csv);
    let text = match dest.format {
        Format::Csv => csv_table(points.iter().copied().zip(values.iter().copied())),
        Format::Json => json_text(&json!({
            "version": VERSION,
            "config": {
                "command": "transform",
                "op": format!("{:?}", args.op).to_lowercase(),
                "nu": complex_json(nu.value()),
                "spec": args.spec,
                "grid": grid.to_string(),
                "tol": tol,
                "format": dest.format.name(),
            },
            "x": points,
            "re": values.iter().map(|v| v.re).collect::<Vec<_>>(),
            "im": values.iter().map(|v| v.im).collect::<Vec<_>>(),
        })),
    };
    emit(&dest, &text)?;
    Ok(true)
}

fn suite_json(report: &SuiteReport) -> Value {
    let mut names: Vec<&str> = report.checks.iter().map(|c| c.name).collect();
    names.sort_unstable();
    names.dedup();
    let checks: serde_json::Map<String, Value> = names
        .into_iter()
        .map(|name| {
            let first = report.checks.iter().find(|c| c.name == name).expect("name came from the checks");
            let worst = report.max_of(name).unwrap_or(f64::NAN);
            let kind = match first.kind {
                suite::Bound::AtMost => "at_most",
                suite::Bound::Above => "above",
            };
            (name.to_string(), json!({ "value": worst, "bound": first.bound, "kind": kind }))
        })
        .collect();
    let failures: Vec<Value> = report
        .failures()
        .map(|c| json!({ "case": c.case, "check": c.name, "value": c.value, "bound": c.bound }))
        .collect();
    json!({
        "suite": report.suite.name(),
        "cases": report.cases,
        "max_error": report.max_error(),
        "pass": report.pass(),
        "checks": checks,
        "failures": failures,
    })
}

fn verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse::<Suite>()?]
    };
    if let [single] = suites.as_slice() {
        if single.uses_order() && args.d.is_some() {
            return Err(Failure::Usage(format!("suite {single} takes --nu, not --d")));
        }
        if !single.uses_order() && args.nu.is_some() {
            return Err(Failure::Usage(format!("suite {single} takes --d, not --nu")));
        }
    }
    let orders = args.nu.map(ComplexOrder::new).transpose()?.map(|nu| vec![nu]);
    if args.d == Some(0) {
        return Err(Failure::Usage("--d must be a positive integer".into()));
    }
    let tolerance = args.tol.map(|t| positive("--tol", t)).transpose()?;
    let config = SuiteConfig {
        orders,
        weights: args.d.map(|d| vec![d]),
        tolerance,
        seed: args.seed,
        grid: parse_grid(&args.grid)?,
    };
    let dest = destination(args.out.as_deref(), Format::Json);
    if dest.format != Format::Json {
        return Err(Failure::Usage("verify reports are JSON only".into()));
    }
    let reports = suites.iter().map(|&s| suite::run(s, &config)).collect::<Result<Vec<_>, _>>()?;
    let pass = reports.iter().all(SuiteReport::pass);
    let config_json = json!({
        "command": "verify",
        "suite": args.suite,
        "nu": config.orders.as_ref().map(|o| complex_json(o[0].value())),
        "d": args.d,
        "tol": tolerance,
        "seed": args.seed,
        "grid": config.grid.to_string(),
    });
    let value = if let [report] = reports.as_slice() {
        let mut v = suite_json(report);
        v["version"] = json!(VERSION);
        v["config"] = config_json;
        v
    } else {
        json!({
            "version": VERSION,
            "config": config_json,
            "suites": reports.iter().map(suite_json).collect::<Vec<_>>(),
            "pass": pass,
        })
    };
    emit(&dest, &json_text(&value))?;
    Ok(pass)
}

fn basis(args: &BasisArgs) -> Result<bool, Failure> {
    if args.d == 0 {
        return Err(Failure::Usage("--d must be a positive integer".into()));
    }
    let tol = positive("--tol", args.tol)?;
    let grid = parse_grid(&args.grid)?;
    let points = grid.points()?;
    let g = gram(args.d, args.n)?;
    let deviation = gram_deviation(&g);
    let mut pass = deviation <= tol;

    let fixed_point = if args.check_hankel_fixed_point {
        let e0 = basis_vector(0, args.d)?.profile;
        let positive_grid = Grid::Points(points.iter().copied().filter(|&x| x > 0.0).collect());
        let h = hankel_transform(&e0, &positive_grid, 1e-13)?;
        let dev = h.relative_deviation(&e0.sample(&positive_grid)?)?;
        let ok = dev <= 1e-9;
        pass &= ok;
        Some(json!({ "relative_deviation": dev, "bound": 1e-9, "pass": ok }))
    } else {
        None
    };

    let vectors = (0..=args.n)
        .map(|n| {
            let e = basis_vector(n, args.d)?.profile;
            let values = points.iter().map(|&x| if x > 0.0 { e.evaluate(x) } else { Ok(Complex64::new(0.0, 0.0)) });
            values.collect::<Result<Vec<_>, _>>().map(|v| (n, v))
        })
        .collect::<Result<Vec<_>, Error>>()?;

    let dest = destination(args.out.as_deref(), Format::Json);
    let text = match dest.format {
        Format::Csv => {
            let mut out = String::from("n,x,re,im\n");
            for (n, values) in &vectors {
                for (x, v) in points.iter().zip(values) {
                    out.push_str(&format!("{n},{},{},{}\n", float(*x), float(v.re), float(v.im)));
                }
            }
            out
        }
        Format::Json => json_text(&json!({
            "version": VERSION,
            "config": {
                "command": "basis",
                "d": args.d,
                "n": args.n,
                "grid": grid.to_string(),
                "tol": tol,
                "check_hankel_fixed_point": args.check_hankel_fixed_point,
            },
            "gram": g.iter().map(|row| row.iter().map(|&z| complex_json(z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "gram_deviation": deviation,
            "hankel_fixed_point": fixed_point,
            "x": points,
            "vectors": vectors.iter().map(|(n, values)| json!({
                "n": n,
                "re": values.iter().map(|v| v.re).collect::<Vec<_>>(),
                "im": values.iter().map(|v| v.im).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "pass": pass,
        })),
    };
    emit(&dest, &text)?;
    if !pass {
        eprintln!("basis check failed: gram deviation {deviation:e} (bound {tol:e})");
    }
    Ok(pass)
}
