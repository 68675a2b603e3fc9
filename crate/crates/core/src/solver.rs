//! Time stepping on the full space-time lattice.
//!
//! Two schemes share the compact spatial operator H_h:
//!
//! * [`SchemeKind::Transformed`] discretizes the integrated equation
//!   u = φ + a_{1−α} ∗ (u_xx + f). The convolution is replaced by the
//!   trapezoid-in-value product rule, so level n solves
//!
//!   (H_h − (a_n^n/2) δ_x²) u^n = H_h φ + H_h f_{1−α}(·, t_n)
//!   + Σ_{k=1}^{n−1} a_k^n (δ_x² u^k + δ_x² u^{k−1})/2 + (a_n^n/2) δ_x² u^{n−1}.
//!
//! * [`SchemeKind::L1Baseline`] applies the classical L1 formula to the Caputo
//!   derivative on a uniform mesh.
//!
//! Both are implicit and have no step-size restriction.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::meshes::{SpatialGrid, TemporalMesh};
use crate::operators::{apply_delta_x2, apply_hh, solve_tridiagonal, GridFunction, TridiagonalSystem};
use crate::problems::ProblemSpec;
use crate::quadrature::{f_conv_profile, weights_row_scaled};
use crate::specialfn::gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Transformed,
    L1Baseline,
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeKind::Transformed => "transformed",
            SchemeKind::L1Baseline => "l1",
        })
    }
}

impl FromStr for SchemeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "transformed" => Ok(SchemeKind::Transformed),
            "l1" => Ok(SchemeKind::L1Baseline),
            other => Err(Error::InvalidArgument(format!("unknown scheme `{other}`"))),
        }
    }
}

/// Levels u⁰..u^n of a run together with the grids that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionLattice {
    levels: Vec<GridFunction>,
    // δ_x² of every stored level, reused by the history sum.
    second_differences: Vec<GridFunction>,
    mesh: TemporalMesh,
    grid: SpatialGrid,
    alpha: f64,
}

impl SolutionLattice {
    /// Lattice holding only u⁰ = φ sampled on the grid.
    pub fn start(problem: &ProblemSpec, grid: SpatialGrid, mesh: TemporalMesh) -> Result<Self> {
        let u0 = GridFunction::sample_dirichlet(grid.nodes(), |x| (problem.phi)(x));
        let d2 = apply_delta_x2(&u0, grid.h())?;
        Ok(Self {
            levels: vec![u0],
            second_differences: vec![d2],
            mesh,
            grid,
            alpha: problem.alpha,
        })
    }

    pub fn push(&mut self, level: GridFunction) -> Result<()> {
        if level.len() != self.grid.len() {
            return Err(Error::LengthMismatch {
                expected: self.grid.len(),
                found: level.len(),
            });
        }
        if self.levels.len() > self.mesh.num_steps() {
            return Err(Error::InvalidArgument("lattice already holds every mesh level".into()));
        }
        self.second_differences.push(apply_delta_x2(&level, self.grid.h())?);
        self.levels.push(level);
        Ok(())
    }

    pub fn levels(&self) -> &[GridFunction] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> &GridFunction {
        &self.levels[n]
    }

    /// Index of the newest stored level.
    pub fn current_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_complete(&self) -> bool {
        self.levels.len() == self.mesh.num_steps() + 1
    }

    pub fn mesh(&self) -> &TemporalMesh {
        &self.mesh
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn final_level(&self) -> &GridFunction {
        self.levels.last().unwrap()
    }
}

/// Solves the interior rows of (lower, diag, lower) u = rhs and pads the
/// Dirichlet boundary.
fn solve_interior(off: f64, diag: f64, rhs: &[f64]) -> Result<GridFunction> {
    debug_assert!(diag.abs() - 2.0 * off.abs() > 0.0);
    let m = rhs.len() - 1;
    let sys = TridiagonalSystem::constant(off, diag, rhs[1..m].to_vec());
    let interior = solve_tridiagonal(&sys)?;
    let mut u = vec![0.0; m + 1];
    u[1..m].copy_from_slice(&interior);
    Ok(GridFunction::new(u))
}

/// Level n = `lattice.current_level() + 1` of the transformed scheme.
pub fn step_transformed(lattice: &SolutionLattice, problem: &ProblemSpec) -> Result<GridFunction> {
    let scale = 1.0 / gamma(problem.alpha + 1.0)?;
    step_transformed_scaled(lattice, problem, scale)
}

fn step_transformed_scaled(lattice: &SolutionLattice, problem: &ProblemSpec, scale: f64) -> Result<GridFunction> {
    let n = lattice.current_level() + 1;
    let mesh = lattice.mesh();
    if n > mesh.num_steps() {
        return Err(Error::InvalidArgument("lattice already holds every mesh level".into()));
    }
    let grid = lattice.grid();
    let h = grid.h();
    let row = weights_row_scaled(mesh.points(), problem.alpha, n, scale);
    let a = row.as_slice();

    let forcing = f_conv_profile(problem, mesh, grid.nodes(), n, false)?;
    let mut source: Vec<f64> = lattice
        .level(0)
        .iter()
        .zip(forcing.iter())
        .map(|(p, f)| p + f)
        .collect();
    source[0] = 0.0;
    let last = source.len() - 1;
    source[last] = 0.0;
    let mut rhs = apply_hh(&source)?.into_inner();

    // History weight on δ_x² u^k: half of a_k^n plus half of a_{k+1}^n, with
    // the implicit half of a_n^n moved to the left-hand side.
    let d2 = &lattice.second_differences;
    for k in 0..n {
        let mut w = 0.5 * a[k];
        if k >= 1 {
            w += 0.5 * a[k - 1];
        }
        for (r, d) in rhs.iter_mut().zip(d2[k].iter()) {
            *r += w * d;
        }
    }

    let c = 0.5 * a[n - 1] / (h * h);
    let off = 1.0 / 12.0 - c;
    let diag = 10.0 / 12.0 + 2.0 * c;
    debug_assert!(diag.abs() - 2.0 * off.abs() >= 2.0 / 3.0 - 1e-12);
    solve_interior(off, diag, &rhs)
}

/// b_j = (j + 1)^{1−α} − j^{1−α}.
pub fn l1_coefficients(alpha: f64, count: usize) -> Vec<f64> {
    let p = 1.0 - alpha;
    (0..count)
        .map(|j| ((j + 1) as f64).powf(p) - (j as f64).powf(p))
        .collect()
}

/// Level n of the L1 baseline (uniform meshes only).
pub fn step_l1(lattice: &SolutionLattice, problem: &ProblemSpec) -> Result<GridFunction> {
    let n = lattice.current_level() + 1;
    let b = l1_coefficients(problem.alpha, n);
    step_l1_with(lattice, problem, &b, gamma(2.0 - problem.alpha)?)
}

fn step_l1_with(lattice: &SolutionLattice, problem: &ProblemSpec, b: &[f64], gamma_2ma: f64) -> Result<GridFunction> {
    let mesh = lattice.mesh();
    if !mesh.is_uniform() {
        return Err(Error::NonUniformMesh);
    }
    let n = lattice.current_level() + 1;
    if n > mesh.num_steps() {
        return Err(Error::InvalidArgument("lattice already holds every mesh level".into()));
    }
    let grid = lattice.grid();
    let h = grid.h();
    let tau = mesh.tau(1);
    let g = 1.0 / (gamma_2ma * tau.powf(problem.alpha));

    let mut history: Vec<f64> = lattice.level(0).iter().map(|u| b[n - 1] * u).collect();
    for k in 1..n {
        let w = b[n - k - 1] - b[n - k];
        for (acc, u) in history.iter_mut().zip(lattice.level(k).iter()) {
            *acc += w * u;
        }
    }
    let tn = mesh.t(n);
    let mut source: Vec<f64> = history
        .iter()
        .zip(grid.nodes())
        .map(|(hist, &x)| g * hist + (problem.f)(x, tn))
        .collect();
    source[0] = 0.0;
    let last = source.len() - 1;
    source[last] = 0.0;
    let rhs = apply_hh(&source)?.into_inner();

    let inv_h2 = 1.0 / (h * h);
    let off = g / 12.0 - inv_h2;
    let diag = 10.0 * g / 12.0 + 2.0 * inv_h2;
    solve_interior(off, diag, &rhs)
}

/// Full run: u⁰ = φ, then levels 1..=N from the chosen stepper.
pub fn solve(
    problem: &ProblemSpec,
    grid: &SpatialGrid,
    mesh: &TemporalMesh,
    scheme: SchemeKind,
) -> Result<SolutionLattice> {
    let mut lattice = SolutionLattice::start(problem, grid.clone(), mesh.clone())?;
    let steps = mesh.num_steps();
    match scheme {
        SchemeKind::Transformed => {
            let scale = 1.0 / gamma(problem.alpha + 1.0)?;
            for _ in 0..steps {
                let next = step_transformed_scaled(&lattice, problem, scale)?;
                lattice.push(next)?;
            }
        }
        SchemeKind::L1Baseline => {
            if !mesh.is_uniform() {
                return Err(Error::NonUniformMesh);
            }
            let b = l1_coefficients(problem.alpha, steps);
            let g2 = gamma(2.0 - problem.alpha)?;
            for _ in 0..steps {
                let next = step_l1_with(&lattice, problem, &b, g2)?;
                lattice.push(next)?;
            }
        }
    }
    Ok(lattice)
}
