//! Spatial and temporal grids.

use crate::error::{Error, Result};

/// Uniform grid on [0, 1] with `cells` cells.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialGrid {
    cells: usize,
    h: f64,
    nodes: Vec<f64>,
}

impl SpatialGrid {
    pub fn new(cells: usize) -> Result<Self> {
        if cells < 2 {
            return Err(Error::InvalidArgument(format!(
                "spatial grid needs at least 2 cells, got {cells}"
            )));
        }
        let h = 1.0 / cells as f64;
        let nodes = (0..=cells).map(|i| i as f64 / cells as f64).collect();
        Ok(Self { cells, h, nodes })
    }

    /// Number of cells M.
    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// x_i = i/M for i = 0..=M.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Partition 0 = t₀ < t₁ < … < t_N = T.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalMesh {
    final_time: f64,
    points: Vec<f64>,
    steps: Vec<f64>,
    tau_max: f64,
}

impl TemporalMesh {
    /// t_n = nT/N.
    pub fn uniform(final_time: f64, steps: usize) -> Result<Self> {
        Self::graded(final_time, steps, 1.0)
    }

    /// t_n = T (n/N)^r, clustering points near t = 0 for r > 1.
    pub fn graded(final_time: f64, steps: usize, grading: f64) -> Result<Self> {
        if !(grading >= 1.0) || !grading.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "grading exponent must be >= 1, got {grading}"
            )));
        }
        let n_steps = steps;
        Self::from_fn(final_time, n_steps, |n| {
            let s = n as f64 / n_steps as f64;
            if grading == 1.0 {
                final_time * s
            } else {
                final_time * s.powf(grading)
            }
        })
    }

    /// Arbitrary strictly increasing points starting at 0.
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument(
                "a temporal mesh needs at least two points".into(),
            ));
        }
        if points[0] != 0.0 {
            return Err(Error::InvalidArgument("temporal mesh must start at t = 0".into()));
        }
        let steps: Vec<f64> = points.windows(2).map(|w| w[1] - w[0]).collect();
        if let Some(n) = steps.iter().position(|&tau| !(tau > 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "temporal mesh is not strictly increasing at step {}",
                n + 1
            )));
        }
        let tau_max = steps.iter().copied().fold(0.0, f64::max);
        let final_time = *points.last().unwrap();
        Ok(Self {
            final_time,
            points,
            steps,
            tau_max,
        })
    }

    fn from_fn(final_time: f64, steps: usize, point: impl Fn(usize) -> f64) -> Result<Self> {
        if !(final_time > 0.0) || !final_time.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "final time must be positive, got {final_time}"
            )));
        }
        if steps == 0 {
            return Err(Error::InvalidArgument("number of time steps must be at least 1".into()));
        }
        let mut points: Vec<f64> = (0..=steps).map(point).collect();
        points[steps] = final_time;
        Self::from_points(points)
    }

    /// Single-point mesh {0} used for N = 0 runs.
    pub fn initial_only() -> Self {
        Self {
            final_time: 0.0,
            points: vec![0.0],
            steps: Vec::new(),
            tau_max: 0.0,
        }
    }

    pub fn final_time(&self) -> f64 {
        self.final_time
    }

    /// Number of steps N.
    pub fn num_steps(&self) -> usize {
        self.steps.len()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn t(&self, n: usize) -> f64 {
        self.points[n]
    }

    /// τ_n = t_n − t_{n−1} for n = 1..=N, stored at index n − 1.
    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    pub fn tau(&self, n: usize) -> f64 {
        self.steps[n - 1]
    }

    pub fn tau_max(&self) -> f64 {
        self.tau_max
    }

    /// True when every step equals T/N to within a few ulps.
    pub fn is_uniform(&self) -> bool {
        let n = self.num_steps();
        if n == 0 {
            return true;
        }
        let tau = self.final_time / n as f64;
        self.steps.iter().all(|&s| (s - tau).abs() <= 1e-12 * tau)
    }
}
