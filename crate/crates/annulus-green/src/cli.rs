//! Command-line front end: evaluation, scans, coefficient tables, and the
//! verification report, emitted as CSV or JSON for external plotting.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
//! 3 I/O error. Every output is a pure function of (arguments, seed);
//! reruns reproduce files byte for byte, including under parallel
//! execution (grid rows are ordered by index, not completion).
//!
//! Numbers are printed in shortest round-trip decimal form, so CSV and
//! JSON modes carry identical numeric content.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{Annulus, EvalPoint, UnitDirection};
use crate::error::Error;
use crate::green::{coeff_c0, coefficient_rows, green, robin};
use crate::quadrature::QuadratureSpec;
use crate::series::Truncation;
use crate::verify::{run_full_verification_with, VerificationOptions};

const EXIT_OK: i32 = 0;
const EXIT_VERIFICATION: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "annulus-green",
    version,
    about = "Neumann Green function of the N-dimensional annulus: evaluation, scans, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate G, H and the singular part at one point pair
    Eval(EvalArgs),
    /// Robin function τ(ρ) over a radius grid
    Robin(RobinArgs),
    /// Run the full verification suite and write the report
    Verify(VerifyArgs),
    /// Planar slice of G(x, ·) for external plotting
    Scan(ScanArgs),
    /// Coefficient tables A_m, B_m and C_0 over a radius grid
    Coeffs(CoeffsArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Ambient dimension N >= 3
    #[arg(long = "dim", default_value_t = 3)]
    dim: usize,
    /// Inner radius of the annulus, in (0, 1)
    #[arg(long = "a", default_value_t = 0.5)]
    a: f64,
    /// Hard cap on the series order
    #[arg(long = "trunc-max", default_value_t = 200)]
    trunc_max: usize,
    /// Relative tolerance of the adaptive stopping rule
    #[arg(long = "trunc-tol", default_value_t = 1e-10)]
    trunc_tol: f64,
    /// Disable adaptive stopping (always sum to --trunc-max)
    #[arg(long = "trunc-fixed", default_value_t = false)]
    trunc_fixed: bool,
    /// Output format (default: json for eval, csv for row streams)
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Output path (default: stdout; for verify: verification_report.json)
    #[arg(long = "out")]
    out: Option<PathBuf>,
    /// Seed for every stochastic component
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl CommonArgs {
    fn annulus(&self) -> Result<Annulus, Error> {
        Annulus::new(self.dim, self.a)
    }

    fn truncation(&self) -> Result<Truncation, Error> {
        Truncation::new(self.trunc_max, self.trunc_tol, !self.trunc_fixed)
    }

    fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.format.unwrap_or(default)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Source point, comma-separated coordinates matching --dim
    #[arg(long = "x", value_parser = parse_coords, allow_hyphen_values = true)]
    x: Coords,
    /// Evaluation point, comma-separated coordinates matching --dim
    #[arg(long = "y", value_parser = parse_coords, allow_hyphen_values = true)]
    y: Coords,
}

#[derive(Args, Debug)]
struct RobinArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Smallest grid radius (must exceed a)
    #[arg(long = "rho-min")]
    rho_min: f64,
    /// Largest grid radius (must stay below 1)
    #[arg(long = "rho-max")]
    rho_max: f64,
    /// Number of grid points
    #[arg(long, default_value_t = 50)]
    points: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Gauss-Legendre node count for the quadrature checks
    #[arg(long = "radial-nodes", default_value_t = 32)]
    radial_nodes: usize,
    /// Sphere direction count for the quadrature checks
    #[arg(long = "sphere-samples", default_value_t = 2048)]
    sphere_samples: usize,
    /// Fault-injection hook used by the test suite: flips the sign of C_0
    /// so the boundary checks must fail
    #[arg(long = "inject-c0-sign-flip", hide = true, default_value_t = false)]
    inject_c0_sign_flip: bool,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Fixed source point
    #[arg(long = "x", value_parser = parse_coords, allow_hyphen_values = true)]
    x: Coords,
    /// First in-plane direction (defaults to the first coordinate axis)
    #[arg(long = "e1", value_parser = parse_coords, allow_hyphen_values = true)]
    e1: Option<Coords>,
    /// Second in-plane direction, orthogonal to e1 (defaults to the second axis)
    #[arg(long = "e2", value_parser = parse_coords, allow_hyphen_values = true)]
    e2: Option<Coords>,
    /// Slice center, defaults to the origin
    #[arg(long = "center", value_parser = parse_coords, allow_hyphen_values = true)]
    center: Option<Coords>,
    /// Grid points per slice axis (grid x grid cells)
    #[arg(long, default_value_t = 101)]
    grid: usize,
    #[arg(long = "umin", default_value_t = -1.0, allow_negative_numbers = true)]
    umin: f64,
    #[arg(long = "umax", default_value_t = 1.0, allow_negative_numbers = true)]
    umax: f64,
    #[arg(long = "vmin", default_value_t = -1.0, allow_negative_numbers = true)]
    vmin: f64,
    #[arg(long = "vmax", default_value_t = 1.0, allow_negative_numbers = true)]
    vmax: f64,
}

#[derive(Args, Debug)]
struct CoeffsArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long = "rho-min")]
    rho_min: Option<f64>,
    #[arg(long = "rho-max")]
    rho_max: Option<f64>,
    /// Number of radius grid points
    #[arg(long, default_value_t = 5)]
    points: usize,
    /// Highest coefficient order in the table
    #[arg(long = "m-max", default_value_t = 20)]
    m_max: usize,
}

/// Comma-separated coordinate list as one argument value.
#[derive(Debug, Clone)]
struct Coords(Vec<f64>);

fn parse_coords(s: &str) -> Result<Coords, String> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid coordinate {part:?}"))
        })
        .collect::<Result<Vec<f64>, String>>()
        .map(Coords)
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(&args),
        Command::Robin(args) => cmd_robin(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Scan(args) => cmd_scan(&args),
        Command::Coeffs(args) => cmd_coeffs(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn point_in_dim(coords: &[f64], dim: usize, name: &str) -> Result<EvalPoint, Failure> {
    if coords.len() != dim {
        return Err(usage(format!(
            "{name} has {} coordinates but --dim is {dim}",
            coords.len()
        )));
    }
    EvalPoint::new(coords).map_err(Failure::from)
}

#[derive(Serialize)]
struct EvalRecord {
    green: f64,
    regular_part: f64,
    singular_part: f64,
    tail_estimate: f64,
    terms_used: usize,
}

fn cmd_eval(args: &EvalArgs) -> Result<i32, Failure> {
    let dom = args.common.annulus()?;
    let truncation = args.common.truncation()?;
    let x = point_in_dim(&args.x.0, args.common.dim, "--x")?;
    let y = point_in_dim(&args.y.0, args.common.dim, "--y")?;
    let g = green(&x, &y, &dom, &truncation)?;
    let record = EvalRecord {
        green: g.green,
        regular_part: g.regular_part,
        singular_part: g.singular_part,
        tail_estimate: g.tail_estimate,
        terms_used: g.terms_used,
    };
    let mut out = open_output(args.common.out.as_deref())?;
    match args.common.format_or(OutputFormat::Json) {
        OutputFormat::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string(&record).expect("serializable")
            )?;
        }
        OutputFormat::Csv => {
            writeln!(
                out,
                "green,regular_part,singular_part,tail_estimate,terms_used"
            )?;
            writeln!(
                out,
                "{},{},{},{},{}",
                record.green,
                record.regular_part,
                record.singular_part,
                record.tail_estimate,
                record.terms_used
            )?;
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RobinRecord {
    rho: f64,
    tau: f64,
    tail: f64,
}

fn cmd_robin(args: &RobinArgs) -> Result<i32, Failure> {
    let dom = args.common.annulus()?;
    let truncation = args.common.truncation()?;
    if args.points == 0 {
        return Err(usage("--points must be at least 1"));
    }
    if args.rho_min.is_nan() || args.rho_max.is_nan() || args.rho_min > args.rho_max {
        return Err(usage("--rho-min must not exceed --rho-max"));
    }
    if args.rho_min <= dom.inner_radius() || args.rho_max >= 1.0 {
        return Err(usage(format!(
            "radius grid [{}, {}] must lie strictly inside ({}, 1): the Robin function diverges on the boundary",
            args.rho_min,
            args.rho_max,
            dom.inner_radius()
        )));
    }
    let axis = UnitDirection::axis(dom.dimension(), 0);
    let records: Result<Vec<RobinRecord>, Error> = (0..args.points)
        .map(|i| {
            let fraction = if args.points == 1 {
                0.0
            } else {
                i as f64 / (args.points - 1) as f64
            };
            let rho = args.rho_min + (args.rho_max - args.rho_min) * fraction;
            let x = EvalPoint::from_polar(rho, &axis)?;
            let tau = robin(&x, &dom, &truncation)?;
            Ok(RobinRecord {
                rho,
                tau: tau.value,
                tail: tau.tail_estimate,
            })
        })
        .collect();
    let records = records?;

    let mut out = open_output(args.common.out.as_deref())?;
    match args.common.format_or(OutputFormat::Csv) {
        OutputFormat::Csv => {
            writeln!(out, "rho,tau,tail")?;
            for r in &records {
                writeln!(out, "{},{},{}", r.rho, r.tau, r.tail)?;
            }
        }
        OutputFormat::Json => {
            for r in &records {
                writeln!(out, "{}", serde_json::to_string(r).expect("serializable"))?;
            }
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, Failure> {
    let dom = args.common.annulus()?;
    let truncation = args.common.truncation()?;
    let quadrature = QuadratureSpec::new(args.radial_nodes, args.sphere_samples, args.common.seed)?;
    let options = VerificationOptions {
        quadrature,
        truncation,
        fault_c0_sign_flip: args.inject_c0_sign_flip,
    };
    let report = run_full_verification_with(&dom, &options);

    let path = args
        .common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("verification_report.json"));
    let mut file = BufWriter::new(File::create(&path)?);
    file.write_all(report.to_json().as_bytes())?;
    file.flush()?;

    println!(
        "verification: {} passed, {} failed, {} flagged -> {}",
        report.passed,
        report.failed,
        report.flagged,
        path.display()
    );
    Ok(if report.has_hard_failures() {
        EXIT_VERIFICATION
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct ScanRecord {
    y: Vec<f64>,
    #[serde(rename = "G")]
    green: Option<f64>,
    #[serde(rename = "H")]
    regular_part: Option<f64>,
    tail: Option<f64>,
    flag: &'static str,
}

fn cmd_scan(args: &ScanArgs) -> Result<i32, Failure> {
    let dom = args.common.annulus()?;
    let truncation = args.common.truncation()?;
    let dim = args.common.dim;
    let x = point_in_dim(&args.x.0, dim, "--x")?;
    dom.check_point(&x)?;
    if args.grid < 2 {
        return Err(usage("--grid needs at least 2 points per axis"));
    }

    let e1 = match &args.e1 {
        Some(v) => {
            if v.0.len() != dim {
                return Err(usage("--e1 does not match --dim"));
            }
            UnitDirection::new(&v.0)?
        }
        None => UnitDirection::axis(dim, 0),
    };
    let e2 = match &args.e2 {
        Some(v) => {
            if v.0.len() != dim {
                return Err(usage("--e2 does not match --dim"));
            }
            UnitDirection::new(&v.0)?
        }
        None => UnitDirection::axis(dim, 1),
    };
    if e1.dot(&e2).abs() > 1e-10 {
        return Err(usage("slice directions e1 and e2 must be orthogonal"));
    }
    let center = match &args.center {
        Some(c) => {
            if c.0.len() != dim {
                return Err(usage("--center does not match --dim"));
            }
            c.0.clone()
        }
        None => vec![0.0; dim],
    };

    let grid = args.grid;
    let records: Vec<ScanRecord> = (0..grid * grid)
        .into_par_iter()
        .map(|index| {
            let iu = index / grid;
            let iv = index % grid;
            let u = args.umin + (args.umax - args.umin) * iu as f64 / (grid - 1) as f64;
            let v = args.vmin + (args.vmax - args.vmin) * iv as f64 / (grid - 1) as f64;
            let coords: Vec<f64> = center
                .iter()
                .zip(e1.components())
                .zip(e2.components())
                .map(|((c, d1), d2)| c + u * d1 + v * d2)
                .collect();
            let radius = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
            if !dom.contains_radius(radius) || radius == 0.0 {
                return ScanRecord {
                    y: coords,
                    green: None,
                    regular_part: None,
                    tail: None,
                    flag: "outside",
                };
            }
            let y = EvalPoint::new(&coords).expect("nonzero radius");
            if y.distance(&x) < 1e-3 {
                return ScanRecord {
                    y: coords,
                    green: None,
                    regular_part: None,
                    tail: None,
                    flag: "near-singular",
                };
            }
            match green(&x, &y, &dom, &truncation) {
                Ok(g) => ScanRecord {
                    y: coords,
                    green: Some(g.green),
                    regular_part: Some(g.regular_part),
                    tail: Some(g.tail_estimate),
                    flag: if g.tail_reliable {
                        ""
                    } else {
                        "unreliable-tail"
                    },
                },
                Err(_) => ScanRecord {
                    y: coords,
                    green: None,
                    regular_part: None,
                    tail: None,
                    flag: "near-singular",
                },
            }
        })
        .collect();

    let mut out = open_output(args.common.out.as_deref())?;
    match args.common.format_or(OutputFormat::Csv) {
        OutputFormat::Csv => {
            let coords_header: Vec<String> = (1..=dim).map(|i| format!("y{i}")).collect();
            writeln!(out, "{},G,H,tail,flag", coords_header.join(","))?;
            for r in &records {
                let coords: Vec<String> = r.y.iter().map(|c| c.to_string()).collect();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    coords.join(","),
                    opt(r.green),
                    opt(r.regular_part),
                    opt(r.tail),
                    r.flag
                )?;
            }
        }
        OutputFormat::Json => {
            for r in &records {
                writeln!(out, "{}", serde_json::to_string(r).expect("serializable"))?;
            }
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct CoeffRecord {
    rho: f64,
    m: usize,
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
    #[serde(rename = "C0")]
    c0: f64,
}

fn cmd_coeffs(args: &CoeffsArgs) -> Result<i32, Failure> {
    let dom = args.common.annulus()?;
    if args.points == 0 {
        return Err(usage("--points must be at least 1"));
    }
    if args.m_max == 0 {
        return Err(usage("--m-max must be at least 1"));
    }
    let rho_min = args.rho_min.unwrap_or(dom.inner_radius());
    let rho_max = args.rho_max.unwrap_or(1.0);
    if rho_min.is_nan()
        || rho_max.is_nan()
        || rho_min > rho_max
        || !dom.contains_radius(rho_min)
        || !dom.contains_radius(rho_max)
    {
        return Err(usage(format!(
            "radius grid [{rho_min}, {rho_max}] must lie in [{}, 1]",
            dom.inner_radius()
        )));
    }
    let c0 = coeff_c0(&dom);
    let mut records = Vec::with_capacity(args.points * args.m_max);
    for i in 0..args.points {
        let fraction = if args.points == 1 {
            0.0
        } else {
            i as f64 / (args.points - 1) as f64
        };
        let rho = rho_min + (rho_max - rho_min) * fraction;
        for row in coefficient_rows(&dom, rho, args.m_max)? {
            records.push(CoeffRecord {
                rho,
                m: row.order,
                a: row.a,
                b: row.b,
                c0,
            });
        }
    }

    let mut out = open_output(args.common.out.as_deref())?;
    match args.common.format_or(OutputFormat::Csv) {
        OutputFormat::Csv => {
            writeln!(out, "rho,m,A,B,C0")?;
            for r in &records {
                writeln!(out, "{},{},{},{},{}", r.rho, r.m, r.a, r.b, r.c0)?;
            }
        }
        OutputFormat::Json => {
            for r in &records {
                writeln!(out, "{}", serde_json::to_string(r).expect("serializable"))?;
            }
        }
    }
    out.flush()?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_parsing() {
        assert_eq!(parse_coords("0.75,0,0").unwrap().0, vec![0.75, 0.0, 0.0]);
        assert_eq!(parse_coords("1, -2 ,3.5").unwrap().0, vec![1.0, -2.0, 3.5]);
        assert!(parse_coords("1,abc").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        // Bad inner radius.
        let code = run([
            "annulus-green",
            "eval",
            "--a",
            "1.2",
            "--x",
            "0.75,0,0",
            "--y",
            "0,0.6,0",
        ]);
        assert_eq!(code, EXIT_USAGE);
        // Coincident points.
        let code = run([
            "annulus-green",
            "eval",
            "--x",
            "0.75,0,0",
            "--y",
            "0.75,0,0",
        ]);
        assert_eq!(code, EXIT_USAGE);
        // Dimension mismatch between --dim and the point.
        let code = run([
            "annulus-green",
            "eval",
            "--dim",
            "4",
            "--x",
            "0.75,0,0",
            "--y",
            "0,0.6,0",
        ]);
        assert_eq!(code, EXIT_USAGE);
        // Robin grid touching the outer boundary.
        let code = run([
            "annulus-green",
            "robin",
            "--rho-min",
            "0.6",
            "--rho-max",
            "1.0",
        ]);
        assert_eq!(code, EXIT_USAGE);
        // Non-orthogonal slice directions.
        let code = run([
            "annulus-green",
            "scan",
            "--x",
            "0.75,0,0",
            "--e1",
            "1,0,0",
            "--e2",
            "1,1,0",
        ]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn help_exits_0() {
        assert_eq!(run(["annulus-green", "--help"]), EXIT_OK);
    }
}
