//! Command-line front end: `run` for a single solve, `converge` for a sweep.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::{run_sweep, ErrorNorm, MeshKind, OutputFormat, SweepConfig};
use crate::error::{Error, Result};
use crate::meshes::SpatialGrid;
use crate::problems::{by_label, PROBLEM_LABELS};
use crate::solver::{solve, SchemeKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fracdiff",
    version,
    about = "Time-fractional diffusion solver and convergence harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve once and print the final-time profile or the whole lattice.
    Run(RunArgs),
    /// Sweep (alpha, N) and report errors and observed rates.
    Converge(ConvergeArgs),
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, default_value_t = 100)]
    spatial_cells: usize,
    #[arg(long, default_value_t = 1.0)]
    final_time: f64,
    #[arg(long, default_value = "transformed", value_parser = parse_scheme)]
    scheme: SchemeKind,
    #[arg(long, default_value = "uniform", value_parser = parse_mesh)]
    mesh: MeshKind,
    #[arg(long, default_value = "manufactured-sin")]
    problem: String,
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    time_steps: usize,
    /// `final` prints x,u at t = T; `lattice` prints t,x,u for every level.
    #[arg(long, default_value = "final", value_parser = ["final", "lattice"])]
    dump: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ConvergeArgs {
    /// Comma-separated list of fractional orders.
    #[arg(long, value_delimiter = ',', required = true)]
    alpha: Vec<f64>,
    /// `a:b:x2` doubling ladder or a comma-separated list.
    #[arg(long, value_parser = parse_time_steps)]
    time_steps: TimeSteps,
    #[arg(long, default_value = "max", value_parser = parse_norm)]
    norm: ErrorNorm,
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: OutputFormat,
    #[command(flatten)]
    common: Common,
}

/// Parsed `--time-steps` value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeSteps {
    pub values: Vec<usize>,
    /// Given as an `a:b:x2` ladder.
    pub ladder: bool,
}

pub fn parse_time_steps(s: &str) -> std::result::Result<TimeSteps, String> {
    if let Some((range, factor)) = s.rsplit_once(':') {
        if factor != "x2" {
            return Err(format!("only x2 ladders are supported, got `{factor}`"));
        }
        let (a, b) = range
            .split_once(':')
            .ok_or_else(|| format!("expected a:b:x2, got `{s}`"))?;
        let a: usize = a.trim().parse().map_err(|_| format!("bad ladder start `{a}`"))?;
        let b: usize = b.trim().parse().map_err(|_| format!("bad ladder end `{b}`"))?;
        if a == 0 || b < a {
            return Err(format!("ladder must satisfy 1 <= a <= b, got {a}:{b}"));
        }
        let mut values = vec![a];
        while let Some(next) = values.last().map(|n| n * 2).filter(|&n| n <= b) {
            values.push(next);
        }
        if *values.last().unwrap() != b {
            return Err(format!("{b} is not reached by doubling from {a}"));
        }
        return Ok(TimeSteps { values, ladder: true });
    }
    let values = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad time-step count `{p}`"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(TimeSteps { values, ladder: false })
}

fn parse_scheme(s: &str) -> std::result::Result<SchemeKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mesh(s: &str) -> std::result::Result<MeshKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_norm(s: &str) -> std::result::Result<ErrorNorm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

const SYNOPSIS: &str = "usage: fracdiff run --alpha <a> --time-steps <N> [--spatial-cells <M>] [--problem <label>] ...\n       fracdiff converge --alpha <a,b,...> --time-steps <a:b:x2|list> [--format csv|table] ...";

/// Failures split by exit code.
enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

fn open_output<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    })
}

fn check_common(c: &Common) -> std::result::Result<(), Failure> {
    if !PROBLEM_LABELS.contains(&c.problem.as_str()) {
        return Err(Failure::Usage(format!(
            "unknown problem `{}` (known: {})",
            c.problem,
            PROBLEM_LABELS.join(", ")
        )));
    }
    if c.scheme == SchemeKind::L1Baseline && !c.mesh.is_uniform() {
        return Err(Failure::Usage("the l1 scheme only supports --mesh uniform".into()));
    }
    if c.spatial_cells < 2 {
        return Err(Failure::Usage("--spatial-cells must be at least 2".into()));
    }
    if !(c.final_time > 0.0) {
        return Err(Failure::Usage("--final-time must be positive".into()));
    }
    Ok(())
}

fn run_single(args: RunArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    check_common(&args.common)?;
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        return Err(Failure::Usage(format!("--alpha must be in (0, 1), got {}", args.alpha)));
    }
    let c = &args.common;
    let problem = by_label(&c.problem, args.alpha, c.final_time)?;
    let grid = SpatialGrid::new(c.spatial_cells)?;
    let mesh = if args.time_steps == 0 {
        crate::meshes::TemporalMesh::initial_only()
    } else {
        c.mesh.build(c.final_time, args.time_steps)?
    };
    let lattice = solve(&problem, &grid, &mesh, c.scheme)?;
    let mut out = open_output(&c.output, stdout)?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(&mut out);
    let num = |x: f64| format!("{x:e}");
    if args.dump == "lattice" {
        w.write_record(["t", "x", "u"]).map_err(Error::from)?;
        for (n, level) in lattice.levels().iter().enumerate() {
            let t = lattice.mesh().t(n);
            for (&x, &u) in grid.nodes().iter().zip(level.iter()) {
                w.write_record([num(t), num(x), num(u)]).map_err(Error::from)?;
            }
        }
    } else {
        let t = lattice.mesh().t(lattice.current_level());
        match &problem.exact_u {
            Some(exact) => {
                w.write_record(["x", "u", "exact", "abs_error"]).map_err(Error::from)?;
                for (&x, &u) in grid.nodes().iter().zip(lattice.final_level().iter()) {
                    let e = exact(x, t);
                    w.write_record([num(x), num(u), num(e), num((u - e).abs())])
                        .map_err(Error::from)?;
                }
            }
            None => {
                w.write_record(["x", "u"]).map_err(Error::from)?;
                for (&x, &u) in grid.nodes().iter().zip(lattice.final_level().iter()) {
                    w.write_record([num(x), num(u)]).map_err(Error::from)?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn run_converge(args: ConvergeArgs, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    check_common(&args.common)?;
    let c = &args.common;
    let cfg = SweepConfig {
        alphas: args.alpha,
        spatial_cells: c.spatial_cells,
        time_steps: args.time_steps.values,
        final_time: c.final_time,
        scheme: c.scheme,
        mesh_kind: c.mesh,
        problem_label: c.problem.clone(),
        norm: args.norm,
        require_rates: args.time_steps.ladder,
    };
    if let Err(e) = cfg.validate() {
        return Err(match e {
            Error::NoExactSolution(_) | Error::Io(_) => Failure::Runtime(e),
            other => Failure::Usage(other.to_string()),
        });
    }
    let report = run_sweep(&cfg)?;
    let mut out = open_output(&c.output, stdout)?;
    report.write(&mut out, args.format)?;
    out.flush()?;
    Ok(())
}

/// Parses `argv` (including the program name) and runs the command.
pub fn cli_main<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Run(args) => run_single(args, stdout),
        Command::Converge(args) => run_converge(args, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}\n{SYNOPSIS}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_FAILURE
        }
    }
}

/// Entry point for the binary.
pub fn main_with_std() -> i32 {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let stderr = io::stderr();
    let mut err = stderr.lock();
    cli_main(std::env::args_os(), &mut lock, &mut err)
}
