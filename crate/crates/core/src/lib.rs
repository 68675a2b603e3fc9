//! Solver for the 1-D time-fractional diffusion equation
//!
//! ```text
//! ∂_t^α u = u_xx + f   on (0, 1) × (0, T],   0 < α < 1 (Caputo),
//! u(0, t) = u(1, t) = 0,   u(x, 0) = φ(x),
//! ```
//!
//! worked in its integrated Volterra form u = φ + a_{1−α} ∗ (u_xx + f) with
//! a_{1−α}(t) = t^{α−1}/Γ(α). Space uses the fourth-order compact operator
//! H_h; time uses exact product-integration weights of the singular kernel on
//! any partition. A classical L1 scheme is included as a baseline, and
//! [`harness`] runs convergence sweeps and writes CSV or text tables.
//!
//! ```
//! use fracdiff::{manufactured_sin, solve, max_lattice_error, SchemeKind, SpatialGrid, TemporalMesh};
//!
//! let problem = manufactured_sin(0.5).unwrap();
//! let grid = SpatialGrid::new(20).unwrap();
//! let mesh = TemporalMesh::uniform(1.0, 40).unwrap();
//! let lattice = solve(&problem, &grid, &mesh, SchemeKind::Transformed).unwrap();
//! let err = max_lattice_error(&lattice, problem.exact_u.as_ref().unwrap().as_ref());
//! assert!(err < 5e-3);
//! ```

// `!(x > 0.0)` is used on purpose throughout: it rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod harness;
pub mod meshes;
pub mod operators;
pub mod problems;
pub mod quadrature;
pub mod solver;
pub mod specialfn;

pub use error::{Error, Result};
pub use harness::{
    lattice_error, max_lattice_error, run_sweep, ConvergenceReport, ErrorNorm, MeshKind, OutputFormat, ReportRow,
    SweepConfig,
};
pub use meshes::{SpatialGrid, TemporalMesh};
pub use operators::{
    apply_delta_x2, apply_hh, norm_a, norm_h1_semi, norm_l2h, solve_tridiagonal, GridFunction, TridiagonalSystem,
};
pub use problems::{by_label, manufactured_sin, series_reference, sine_decay, ProblemSpec, SeriesSolution};
pub use quadrature::{f_conv, midpoint_convolution, weights_row, WeightRow};
pub use solver::{solve, step_l1, step_transformed, SchemeKind, SolutionLattice};
pub use specialfn::{gamma, mittag_leffler, MLParams};
