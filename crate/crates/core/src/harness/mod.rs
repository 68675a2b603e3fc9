//! Convergence sweeps over (α, N) and their CSV / text-table reports.

pub mod cli;

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::meshes::{SpatialGrid, TemporalMesh};
use crate::operators::{norm_a, norm_l2h};
use crate::problems::{by_label, SpaceTimeFn};
use crate::solver::{solve, SchemeKind, SolutionLattice};

/// Temporal mesh family of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeshKind {
    Uniform,
    /// t_n = T (n/N)^r.
    Graded(f64),
}

impl MeshKind {
    pub fn build(&self, final_time: f64, steps: usize) -> Result<TemporalMesh> {
        match *self {
            MeshKind::Uniform => TemporalMesh::uniform(final_time, steps),
            MeshKind::Graded(r) => TemporalMesh::graded(final_time, steps, r),
        }
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, MeshKind::Uniform) || matches!(self, MeshKind::Graded(r) if *r == 1.0)
    }
}

impl fmt::Display for MeshKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeshKind::Uniform => f.write_str("uniform"),
            MeshKind::Graded(r) => write!(f, "graded:{r}"),
        }
    }
}

impl FromStr for MeshKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "uniform" {
            return Ok(MeshKind::Uniform);
        }
        if let Some(r) = s.strip_prefix("graded:") {
            let r: f64 = r
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad grading exponent in `{s}`")))?;
            if !(r >= 1.0) || !r.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "grading exponent must be >= 1, got {r}"
                )));
            }
            return Ok(MeshKind::Graded(r));
        }
        Err(Error::InvalidArgument(format!(
            "unknown mesh `{s}` (expected uniform or graded:<r>)"
        )))
    }
}

/// How the space-time error of a run is reduced to one number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorNorm {
    /// max over every lattice node (E₁).
    #[default]
    Max,
    /// max over levels of ‖u^n − u(·, t_n)‖_A.
    A,
    /// max over levels of ‖u^n − u(·, t_n)‖_h.
    L2,
}

impl fmt::Display for ErrorNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorNorm::Max => "max",
            ErrorNorm::A => "a",
            ErrorNorm::L2 => "l2",
        })
    }
}

impl FromStr for ErrorNorm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(ErrorNorm::Max),
            "a" => Ok(ErrorNorm::A),
            "l2" => Ok(ErrorNorm::L2),
            other => Err(Error::InvalidArgument(format!("unknown norm `{other}`"))),
        }
    }
}

/// E₁ = max_{i,n} |u_i^n − u(x_i, t_n)|, boundary nodes included.
pub fn max_lattice_error(lattice: &SolutionLattice, exact_u: &(dyn Fn(f64, f64) -> f64 + Send + Sync)) -> f64 {
    let nodes = lattice.grid().nodes();
    lattice
        .levels()
        .iter()
        .enumerate()
        .map(|(n, level)| {
            let t = lattice.mesh().t(n);
            level
                .iter()
                .zip(nodes)
                .fold(0.0f64, |m, (u, &x)| m.max((u - exact_u(x, t)).abs()))
        })
        .fold(0.0, f64::max)
}

/// Lattice error in the requested norm.
pub fn lattice_error(lattice: &SolutionLattice, exact_u: &SpaceTimeFn, norm: ErrorNorm) -> Result<f64> {
    if norm == ErrorNorm::Max {
        return Ok(max_lattice_error(lattice, exact_u.as_ref()));
    }
    let nodes = lattice.grid().nodes();
    let h = lattice.grid().h();
    let mut worst = 0.0f64;
    for (n, level) in lattice.levels().iter().enumerate() {
        let t = lattice.mesh().t(n);
        let mut e: Vec<f64> = level.iter().zip(nodes).map(|(u, &x)| u - exact_u(x, t)).collect();
        let last = e.len() - 1;
        e[0] = 0.0;
        e[last] = 0.0;
        let value = match norm {
            ErrorNorm::A => norm_a(&e, h)?,
            ErrorNorm::L2 => norm_l2h(&e, h),
            ErrorNorm::Max => unreachable!(),
        };
        worst = worst.max(value);
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Table,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            other => Err(Error::InvalidArgument(format!("unknown format `{other}`"))),
        }
    }
}

/// One convergence study: every (α, N) pair is an independent cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub alphas: Vec<f64>,
    pub spatial_cells: usize,
    pub time_steps: Vec<usize>,
    pub final_time: f64,
    pub scheme: SchemeKind,
    pub mesh_kind: MeshKind,
    pub problem_label: String,
    pub norm: ErrorNorm,
    /// Fail unless `time_steps` is a ×2 ladder.
    pub require_rates: bool,
}

impl SweepConfig {
    /// Uniform-mesh transformed-scheme sweep of the manufactured problem on [0, 1].
    pub fn manufactured(alphas: Vec<f64>, spatial_cells: usize, time_steps: Vec<usize>) -> Self {
        Self {
            alphas,
            spatial_cells,
            time_steps,
            final_time: 1.0,
            scheme: SchemeKind::Transformed,
            mesh_kind: MeshKind::Uniform,
            problem_label: "manufactured-sin".into(),
            norm: ErrorNorm::Max,
            require_rates: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() || self.time_steps.is_empty() {
            return Err(Error::InvalidArgument(
                "sweep needs at least one alpha and one N".into(),
            ));
        }
        if self.time_steps.contains(&0) {
            return Err(Error::InvalidArgument("every N must be at least 1".into()));
        }
        if self.time_steps.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument(
                "time-step list must be strictly increasing".into(),
            ));
        }
        if self.require_rates && self.time_steps.windows(2).any(|w| w[1] != 2 * w[0]) {
            return Err(Error::NotDoublingLadder);
        }
        if self.scheme == SchemeKind::L1Baseline && !self.mesh_kind.is_uniform() {
            return Err(Error::NonUniformMesh);
        }
        SpatialGrid::new(self.spatial_cells)?;
        for &alpha in &self.alphas {
            let problem = by_label(&self.problem_label, alpha, self.final_time)?;
            if problem.exact_u.is_none() {
                return Err(Error::NoExactSolution(self.problem_label.clone()));
            }
        }
        Ok(())
    }
}

/// One line of a convergence report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub alpha: f64,
    pub scheme: SchemeKind,
    pub mesh: MeshKind,
    pub spatial_cells: usize,
    pub time_steps: usize,
    pub error: f64,
    /// log₂(E(N/2)/E(N)) when the previous row is the same (α, M) at N/2.
    pub rate: Option<f64>,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceReport {
    pub rows: Vec<ReportRow>,
}

/// Six significant digits in scientific notation.
pub fn format_sci(x: f64) -> String {
    format!("{x:.5e}")
}

pub const CSV_HEADER: [&str; 8] = ["alpha", "scheme", "mesh", "M", "N", "E1", "rate", "wall_seconds"];

impl ConvergenceReport {
    /// Fills `rate` on every row whose predecessor shares (α, M) at half the N.
    pub fn compute_rates(&mut self) {
        for j in 0..self.rows.len() {
            let rate = match j.checked_sub(1).map(|i| &self.rows[i]) {
                Some(prev)
                    if prev.alpha == self.rows[j].alpha
                        && prev.spatial_cells == self.rows[j].spatial_cells
                        && 2 * prev.time_steps == self.rows[j].time_steps =>
                {
                    Some((prev.error / self.rows[j].error).log2())
                }
                _ => None,
            };
            self.rows[j].rate = rate;
        }
    }

    /// Rows for one α, in report order.
    pub fn block(&self, alpha: f64) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(move |r| r.alpha == alpha)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(CSV_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.alpha.to_string(),
                r.scheme.to_string(),
                r.mesh.to_string(),
                r.spatial_cells.to_string(),
                r.time_steps.to_string(),
                format_sci(r.error),
                r.rate.map(format_sci).unwrap_or_default(),
                format_sci(r.wall_seconds),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Text layout: one block per α, first rate shown as `*`.
    pub fn write_table<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{:<8} {:>6} {:>14} {:>8}", "alpha", "N", "E1(M,N)", "rate")?;
        let mut last_alpha = None;
        for r in &self.rows {
            let alpha = if last_alpha == Some(r.alpha) {
                String::new()
            } else {
                r.alpha.to_string()
            };
            if last_alpha.is_some() && last_alpha != Some(r.alpha) {
                writeln!(out)?;
            }
            last_alpha = Some(r.alpha);
            let rate = r.rate.map(|x| format!("{x:.4}")).unwrap_or_else(|| "*".into());
            writeln!(
                out,
                "{:<8} {:>6} {:>14} {:>8}",
                alpha,
                r.time_steps,
                format_sci(r.error),
                rate
            )?;
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, out: W, format: OutputFormat) -> Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Table => self.write_table(out),
        }
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("report is ASCII")
    }
}

/// Solves one cell and measures its error.
pub fn run_cell(cfg: &SweepConfig, alpha: f64, steps: usize) -> Result<ReportRow> {
    let start = Instant::now();
    let problem = by_label(&cfg.problem_label, alpha, cfg.final_time)?;
    let exact = problem
        .exact_u
        .clone()
        .ok_or_else(|| Error::NoExactSolution(cfg.problem_label.clone()))?;
    let grid = SpatialGrid::new(cfg.spatial_cells)?;
    let mesh = cfg.mesh_kind.build(cfg.final_time, steps)?;
    let lattice = solve(&problem, &grid, &mesh, cfg.scheme)?;
    let error = lattice_error(&lattice, &exact, cfg.norm)?;
    Ok(ReportRow {
        alpha,
        scheme: cfg.scheme,
        mesh: cfg.mesh_kind,
        spatial_cells: cfg.spatial_cells,
        time_steps: steps,
        error,
        rate: None,
        wall_seconds: start.elapsed().as_secs_f64().max(f64::MIN_POSITIVE),
    })
}

/// Runs every cell (concurrently) and returns rows in config order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<ConvergenceReport> {
    cfg.validate()?;
    let cells: Vec<(f64, usize)> = cfg
        .alphas
        .iter()
        .flat_map(|&a| cfg.time_steps.iter().map(move |&n| (a, n)))
        .collect();
    // Largest N first so the expensive cells start early.
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(cells[i].1));
    let mut results: Vec<(usize, Result<ReportRow>)> = order
        .into_par_iter()
        .map(|i| (i, run_cell(cfg, cells[i].0, cells[i].1)))
        .collect();
    results.sort_by_key(|(i, _)| *i);
    let rows = results.into_iter().map(|(_, r)| r).collect::<Result<Vec<_>>>()?;
    let mut report = ConvergenceReport { rows };
    report.compute_rates();
    Ok(report)
}
