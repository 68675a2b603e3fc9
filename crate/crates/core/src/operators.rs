//! Discrete spatial operators on a uniform grid, the associated grid norms,
//! and the tridiagonal solve behind each implicit step.
//!
//! Grid functions carry all M + 1 nodes. Dirichlet functions have zero
//! boundary entries; the norms only read interior nodes and half-node
//! differences, so they assume that convention.

use std::ops::{Deref, DerefMut};

use crate::error::{Error, Result};

/// Values at the nodes x₀..x_M of a [`SpatialGrid`](crate::meshes::SpatialGrid).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GridFunction(Vec<f64>);

impl GridFunction {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    /// Samples `f` at `nodes`.
    pub fn sample(nodes: &[f64], f: impl Fn(f64) -> f64) -> Self {
        Self(nodes.iter().map(|&x| f(x)).collect())
    }

    /// Samples `f` at interior nodes and pins both boundary entries to zero.
    pub fn sample_dirichlet(nodes: &[f64], f: impl Fn(f64) -> f64) -> Self {
        let mut v = Self::sample(nodes, f);
        let last = v.0.len() - 1;
        v.0[0] = 0.0;
        v.0[last] = 0.0;
        v
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_dirichlet(&self) -> bool {
        self.0.first() == Some(&0.0) && self.0.last() == Some(&0.0)
    }
}

impl Deref for GridFunction {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for GridFunction {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Vec<f64>> for GridFunction {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

fn check_len(v: &[f64]) -> Result<()> {
    if v.len() < 3 {
        return Err(Error::LengthMismatch {
            expected: 3,
            found: v.len(),
        });
    }
    Ok(())
}

/// Compact averaging operator: (v_{i+1} + 10 v_i + v_{i−1})/12 on interior
/// rows, identity on the two boundary nodes.
pub fn apply_hh(v: &[f64]) -> Result<GridFunction> {
    check_len(v)?;
    let m = v.len() - 1;
    let mut out = v.to_vec();
    for i in 1..m {
        out[i] = (v[i + 1] + 10.0 * v[i] + v[i - 1]) / 12.0;
    }
    Ok(GridFunction(out))
}

/// Centered second difference (v_{i+1} − 2v_i + v_{i−1})/h² on interior rows,
/// zero on the boundary.
pub fn apply_delta_x2(v: &[f64], h: f64) -> Result<GridFunction> {
    check_len(v)?;
    let m = v.len() - 1;
    let mut out = vec![0.0; v.len()];
    let inv_h2 = 1.0 / (h * h);
    for i in 1..m {
        out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv_h2;
    }
    Ok(GridFunction(out))
}

/// ⟨v, w⟩_h = h Σ_{i=1}^{M−1} v_i w_i.
pub fn inner_h(v: &[f64], w: &[f64], h: f64) -> f64 {
    let m = v.len().saturating_sub(1);
    h * (1..m).map(|i| v[i] * w[i]).sum::<f64>()
}

/// ‖v‖_h.
pub fn norm_l2h(v: &[f64], h: f64) -> f64 {
    inner_h(v, v, h).sqrt()
}

fn h1_semi_squared(v: &[f64], h: f64) -> f64 {
    h * v.windows(2).map(|w| ((w[1] - w[0]) / h).powi(2)).sum::<f64>()
}

/// ‖δ_x v‖_h, built from the M half-node slopes (v_i − v_{i−1})/h.
pub fn norm_h1_semi(v: &[f64], h: f64) -> f64 {
    h1_semi_squared(v, h).sqrt()
}

/// ⟨v, v⟩_A = ‖δ_x v‖_h² − (h²/12)·h·Σ(δ_x² v_i)².
pub fn norm_a_squared(v: &[f64], h: f64) -> Result<f64> {
    check_len(v)?;
    let d2 = apply_delta_x2(v, h)?;
    let correction = h * h / 12.0 * inner_h(&d2, &d2, h);
    let radicand = h1_semi_squared(v, h) - correction;
    if radicand < -1e-12 {
        return Err(Error::NegativeRadicand(radicand));
    }
    Ok(radicand.max(0.0))
}

/// ‖v‖_A.
pub fn norm_a(v: &[f64], h: f64) -> Result<f64> {
    norm_a_squared(v, h).map(f64::sqrt)
}

/// Tridiagonal system over the interior rows 1..M−1 of a Dirichlet problem.
///
/// All four vectors have the same length m. `sub[0]` and `sup[m−1]` couple to
/// the (zero) boundary values and are ignored by the elimination, but they do
/// count toward the dominance check.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    /// Toeplitz system with a constant stencil (off, diag, off).
    pub fn constant(off: f64, diag: f64, rhs: Vec<f64>) -> Self {
        let m = rhs.len();
        Self {
            sub: vec![off; m],
            diag: vec![diag; m],
            sup: vec![off; m],
            rhs,
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn check_shape(&self) -> Result<()> {
        let m = self.diag.len();
        for v in [&self.sub, &self.sup, &self.rhs] {
            if v.len() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    found: v.len(),
                });
            }
        }
        Ok(())
    }

    /// First row violating |diag_i| > |sub_i| + |sup_i|.
    pub fn check_dominance(&self) -> Result<()> {
        for i in 0..self.diag.len() {
            if !(self.diag[i].abs() > self.sub[i].abs() + self.sup[i].abs()) {
                return Err(Error::DominanceViolation { row: i });
            }
        }
        Ok(())
    }

    /// A·w over the interior rows, boundary couplings dropped.
    pub fn apply(&self, w: &[f64]) -> Vec<f64> {
        let m = self.len();
        (0..m)
            .map(|i| {
                let mut acc = self.diag[i] * w[i];
                if i > 0 {
                    acc += self.sub[i] * w[i - 1];
                }
                if i + 1 < m {
                    acc += self.sup[i] * w[i + 1];
                }
                acc
            })
            .collect()
    }
}

/// Thomas algorithm: forward elimination then back substitution, no pivoting.
/// Dominance is verified in debug builds only.
pub fn solve_tridiagonal(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    sys.check_shape()?;
    if cfg!(debug_assertions) {
        sys.check_dominance()?;
    }
    let m = sys.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut c = vec![0.0; m];
    let mut d = vec![0.0; m];
    let mut pivot = sys.diag[0];
    if pivot == 0.0 {
        return Err(Error::ZeroPivot { row: 0 });
    }
    c[0] = sys.sup[0] / pivot;
    d[0] = sys.rhs[0] / pivot;
    for i in 1..m {
        pivot = sys.diag[i] - sys.sub[i] * c[i - 1];
        if pivot == 0.0 {
            return Err(Error::ZeroPivot { row: i });
        }
        c[i] = sys.sup[i] / pivot;
        d[i] = (sys.rhs[i] - sys.sub[i] * d[i - 1]) / pivot;
    }
    for i in (0..m - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Ok(d)
}
