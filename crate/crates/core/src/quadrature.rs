//! Product-integration weights for the weakly singular kernel
//! a_{1−α}(t) = t^{α−1}/Γ(α) on an arbitrary temporal mesh.

use crate::error::{Error, Result};
use crate::meshes::TemporalMesh;
use crate::operators::GridFunction;
use crate::problems::ProblemSpec;
use crate::specialfn::gamma;

/// Weights a_k^n = (1/Γ(α)) ∫_{t_{k−1}}^{t_k} (t_n − s)^{α−1} ds for k = 1..=n.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightRow {
    n: usize,
    a: Vec<f64>,
}

impl WeightRow {
    pub fn level(&self) -> usize {
        self.n
    }

    /// a_k^n, 1-based.
    pub fn weight(&self, k: usize) -> f64 {
        self.a[k - 1]
    }

    /// Weights in order k = 1..=n.
    pub fn as_slice(&self) -> &[f64] {
        &self.a
    }

    pub fn sum(&self) -> f64 {
        self.a.iter().sum()
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain {
            what: "fractional order",
            value: alpha,
        });
    }
    Ok(())
}

/// Row n of the convolution weights, using the antiderivative
/// a_k^n = [(t_n − t_{k−1})^α − (t_n − t_k)^α] / Γ(α + 1). Level 0 gives an
/// empty row.
pub fn weights_row(mesh: &TemporalMesh, alpha: f64, n: usize) -> Result<WeightRow> {
    check_alpha(alpha)?;
    if n > mesh.num_steps() {
        return Err(Error::InvalidArgument(format!(
            "level {n} is beyond the mesh ({} steps)",
            mesh.num_steps()
        )));
    }
    let scale = 1.0 / gamma(alpha + 1.0)?;
    Ok(weights_row_scaled(mesh.points(), alpha, n, scale))
}

pub(crate) fn weights_row_scaled(points: &[f64], alpha: f64, n: usize, scale: f64) -> WeightRow {
    let tn = points[n];
    let mut a = Vec::with_capacity(n);
    let mut right = (tn - points[0]).powf(alpha);
    for (k, &tk) in points.iter().enumerate().take(n + 1).skip(1) {
        let left = right;
        right = if k == n { 0.0 } else { (tn - tk).powf(alpha) };
        a.push((left - right) * scale);
    }
    WeightRow { n, a }
}

/// Σ_{k=1}^n a_k^n (g_{k−1} + g_k)/2 for samples g_0..g_n on the mesh points.
/// The weights already carry 1/Γ(α), so the result approximates
/// (a_{1−α} ∗ g)(t_n), not the bare kernel integral.
pub fn midpoint_convolution(g: &[f64], row: &WeightRow) -> Result<f64> {
    if g.len() != row.n + 1 {
        return Err(Error::LengthMismatch {
            expected: row.n + 1,
            found: g.len(),
        });
    }
    Ok(row
        .a
        .iter()
        .enumerate()
        .map(|(j, &a)| a * 0.5 * (g[j] + g[j + 1]))
        .sum())
}

/// (a_{1−α} ∗ f)(x, t_n): the closed form when the problem registers one,
/// otherwise the midpoint rule applied to s ↦ f(x, s).
pub fn f_conv(problem: &ProblemSpec, mesh: &TemporalMesh, x: f64, n: usize) -> Result<f64> {
    if let Some(exact) = &problem.exact_f_conv {
        return Ok(exact(x, mesh.t(n)));
    }
    let row = weights_row(mesh, problem.alpha, n)?;
    let samples: Vec<f64> = mesh.points()[..=n].iter().map(|&t| (problem.f)(x, t)).collect();
    midpoint_convolution(&samples, &row)
}

/// [`f_conv`] at every node of a grid, sharing one weight row. The quadrature
/// path is used when `force_quadrature` is set even if a closed form exists.
pub fn f_conv_profile(
    problem: &ProblemSpec,
    mesh: &TemporalMesh,
    nodes: &[f64],
    n: usize,
    force_quadrature: bool,
) -> Result<GridFunction> {
    let tn = mesh.t(n);
    match (&problem.exact_f_conv, force_quadrature) {
        (Some(exact), false) => Ok(GridFunction::sample(nodes, |x| exact(x, tn))),
        _ => {
            let row = weights_row(mesh, problem.alpha, n)?;
            let times = &mesh.points()[..=n];
            let mut samples = vec![0.0; n + 1];
            let mut out = Vec::with_capacity(nodes.len());
            for &x in nodes {
                for (s, &t) in samples.iter_mut().zip(times) {
                    *s = (problem.f)(x, t);
                }
                out.push(midpoint_convolution(&samples, &row)?);
            }
            Ok(GridFunction::new(out))
        }
    }
}
