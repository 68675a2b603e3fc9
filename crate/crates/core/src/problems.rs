//! Analytic test problems for u_t^(α) = u_xx + f on (0, 1) × (0, T] with
//! homogeneous Dirichlet data, stated in the integrated form
//! u = φ + a_{1−α} ∗ (u_xx + f).

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::specialfn::{gamma, mittag_leffler_series, MLParams};

pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Labels accepted by [`by_label`].
pub const PROBLEM_LABELS: [&str; 3] = ["manufactured-sin", "zero", "sine-decay"];

/// Cancellation tolerated by the series reference before it refuses to
/// evaluate (largest term · ε / |sum|).
const SERIES_MAX_CANCELLATION: f64 = 1e-10;

/// Data of one problem instance: fractional order, horizon, initial data,
/// forcing, and optional closed forms for the solution and for the forcing
/// convolution a_{1−α} ∗ f.
#[derive(Clone)]
pub struct ProblemSpec {
    pub label: String,
    pub alpha: f64,
    pub final_time: f64,
    pub phi: SpaceFn,
    pub f: SpaceTimeFn,
    pub exact_u: Option<SpaceTimeFn>,
    pub exact_f_conv: Option<SpaceTimeFn>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("label", &self.label)
            .field("alpha", &self.alpha)
            .field("final_time", &self.final_time)
            .field("exact_u", &self.exact_u.is_some())
            .field("exact_f_conv", &self.exact_f_conv.is_some())
            .finish()
    }
}

impl ProblemSpec {
    pub fn new(
        label: impl Into<String>,
        alpha: f64,
        final_time: f64,
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain {
                what: "fractional order",
                value: alpha,
            });
        }
        if !(final_time > 0.0) || !final_time.is_finite() {
            return Err(Error::Domain {
                what: "final time",
                value: final_time,
            });
        }
        let spec = Self {
            label: label.into(),
            alpha,
            final_time,
            phi: Arc::new(phi),
            f: Arc::new(f),
            exact_u: None,
            exact_f_conv: None,
        };
        for x in [0.0, 1.0] {
            if (spec.phi)(x).abs() > 1e-12 {
                return Err(Error::InvalidArgument(format!(
                    "initial data must vanish at x = {x} to match the Dirichlet boundary"
                )));
            }
        }
        Ok(spec)
    }

    pub fn with_exact_u(mut self, u: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        for k in 0..=16 {
            let x = k as f64 / 16.0;
            let (ux, px) = (u(x, 0.0), (self.phi)(x));
            if (ux - px).abs() > 1e-12 * (1.0 + px.abs()) {
                return Err(Error::InvalidArgument(format!(
                    "exact solution disagrees with initial data at x = {x}: {ux} vs {px}"
                )));
            }
        }
        self.exact_u = Some(Arc::new(u));
        Ok(self)
    }

    pub fn with_exact_f_conv(mut self, g: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.exact_f_conv = Some(Arc::new(g));
        self
    }

    /// Same problem with a different horizon. Closed forms are unaffected.
    pub fn with_final_time(mut self, final_time: f64) -> Self {
        self.final_time = final_time;
        self
    }
}

/// u(x, t) = sin(πx) t², with the matching forcing
/// f = sin(πx)[(πt)² + 2 t^{2−α}/Γ(3−α)] and its convolution
/// a_{1−α} ∗ f = sin(πx)[2π² t^{2+α}/Γ(3+α) + t²].
pub fn manufactured_sin(alpha: f64) -> Result<ProblemSpec> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain {
            what: "fractional order",
            value: alpha,
        });
    }
    let g3m = gamma(3.0 - alpha)?;
    let g3p = gamma(3.0 + alpha)?;
    let spec = ProblemSpec::new(
        "manufactured-sin",
        alpha,
        1.0,
        |_| 0.0,
        move |x, t| (PI * x).sin() * ((PI * t).powi(2) + 2.0 / g3m * t.powf(2.0 - alpha)),
    )?
    .with_exact_u(|x, t| (PI * x).sin() * t * t)?
    .with_exact_f_conv(move |x, t| (PI * x).sin() * (2.0 * PI * PI * t.powf(2.0 + alpha) / g3p + t * t));
    Ok(spec)
}

/// φ ≡ 0, f ≡ 0, u ≡ 0.
pub fn zero(alpha: f64) -> Result<ProblemSpec> {
    Ok(ProblemSpec::new("zero", alpha, 1.0, |_| 0.0, |_, _| 0.0)?
        .with_exact_u(|_, _| 0.0)?
        .with_exact_f_conv(|_, _| 0.0))
}

/// φ = sin(πx), f ≡ 0: the single-mode homogeneous problem whose solution is
/// E_α(−π² t^α) sin(πx). The exact solution is attached only when the series
/// reference is accurate on the whole horizon.
pub fn sine_decay(alpha: f64, final_time: f64) -> Result<ProblemSpec> {
    let spec = ProblemSpec::new("sine-decay", alpha, final_time, |x| (PI * x).sin(), |_, _| 0.0)?
        .with_exact_f_conv(|_, _| 0.0);
    let series = series_reference(&[1.0], alpha, 1)?;
    if series.check_envelope(final_time).is_err() {
        return Ok(spec);
    }
    spec.with_exact_u(move |x, t| series.eval(x, t).unwrap_or(f64::NAN))
}

/// Registry lookup by CLI label.
pub fn by_label(label: &str, alpha: f64, final_time: f64) -> Result<ProblemSpec> {
    let spec = match label {
        "manufactured-sin" => manufactured_sin(alpha)?,
        "zero" => zero(alpha)?,
        "sine-decay" => return sine_decay(alpha, final_time),
        other => return Err(Error::UnknownProblem(other.to_string())),
    };
    Ok(spec.with_final_time(final_time))
}

/// Truncated sine-series solution of the homogeneous problem,
/// u(x, t) = Σ_{n=1}^{n_modes} a_n E_α(−(nπ)² t^α) sin(nπx).
///
/// Only the Taylor series of E_α is available, so evaluation is restricted to
/// (x, t) where every mode's argument is within range and the series does not
/// cancel catastrophically; outside that envelope `eval` returns an error.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution {
    pub coeffs: Vec<f64>,
    pub n_modes: usize,
    pub alpha: f64,
}

impl SeriesSolution {
    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Err(Error::Domain {
                what: "series evaluation time",
                value: t,
            });
        }
        let mut acc = 0.0;
        for (k, &a) in self.coeffs.iter().take(self.n_modes).enumerate() {
            let lambda = ((k + 1) as f64 * PI).powi(2);
            acc += a * self.mode_decay(lambda, t)? * ((k + 1) as f64 * PI * x).sin();
        }
        Ok(acc)
    }

    fn mode_decay(&self, lambda: f64, t: f64) -> Result<f64> {
        let z = -lambda * t.powf(self.alpha);
        let sum = mittag_leffler_series(&MLParams::new(self.alpha, z))?;
        if sum.cancellation_ratio() > SERIES_MAX_CANCELLATION {
            return Err(Error::PrecisionLoss {
                max_term: sum.max_term,
                sum: sum.value,
            });
        }
        Ok(sum.value)
    }

    /// Ok when every mode evaluates accurately for all t ≤ `t_max`; the
    /// cancellation is monotone in |z|, so checking t_max suffices.
    pub fn check_envelope(&self, t_max: f64) -> Result<()> {
        for k in 1..=self.n_modes {
            let lambda = (k as f64 * PI).powi(2);
            self.mode_decay(lambda, t_max)?;
        }
        Ok(())
    }
}

pub fn series_reference(phi_coeffs: &[f64], alpha: f64, n_modes: usize) -> Result<SeriesSolution> {
    if n_modes == 0 || n_modes > phi_coeffs.len() {
        return Err(Error::InvalidArgument(format!(
            "n_modes must be in 1..={}, got {n_modes}",
            phi_coeffs.len()
        )));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain {
            what: "fractional order",
            value: alpha,
        });
    }
    if let Some(c) = phi_coeffs.iter().find(|c| !c.is_finite()) {
        return Err(Error::Domain {
            what: "sine coefficient",
            value: *c,
        });
    }
    Ok(SeriesSolution {
        coeffs: phi_coeffs.to_vec(),
        n_modes,
        alpha,
    })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // reference digits are kept verbatim
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Adaptive Simpson on [a, b].
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        #[allow(clippy::too_many_arguments)]
        fn rec(
            f: &dyn Fn(f64) -> f64,
            a: f64,
            b: f64,
            fa: f64,
            fm: f64,
            fb: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
            let (flm, frm) = (f(lm), f(rm));
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
                return left + right + (left + right - whole) / 15.0;
            }
            rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
        let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        rec(f, a, b, fa, fm, fb, whole, tol, 50)
    }

    /// φ(x) + (1/Γ(α)) ∫₀^t (t−s)^{α−1} (u_xx + f)(x, s) ds, integrated after
    /// the substitution s = t − w^{1/α}, which removes the kernel singularity.
    fn volterra_rhs(p: &ProblemSpec, x: f64, t: f64) -> f64 {
        let a = p.alpha;
        let u = p.exact_u.as_ref().unwrap().clone();
        let f = p.f.clone();
        // u = sin(πx) t², so u_xx = −π² u.
        let uxx = move |s: f64| -PI * PI * u(x, s);
        let integrand = move |w: f64| {
            let s = (t - w.powf(1.0 / a)).max(0.0);
            uxx(s) + f(x, s)
        };
        (p.phi)(x) + simpson(&integrand, 0.0, t.powf(a), 1e-13) / (a * gamma(a).unwrap())
    }

    #[test]
    fn manufactured_initial_data() {
        let p = manufactured_sin(0.5).unwrap();
        for x in [0.0, 0.3, 0.5, 1.0] {
            assert_eq!((p.exact_u.as_ref().unwrap())(x, 0.0), (p.phi)(x));
        }
    }

    #[test]
    fn manufactured_satisfies_volterra_identity() {
        for alpha in [0.25, 0.5, 0.75] {
            let p = manufactured_sin(alpha).unwrap();
            for (x, t) in [(0.5, 1.0), (0.3, 0.7)] {
                let lhs = (p.exact_u.as_ref().unwrap())(x, t);
                let rhs = volterra_rhs(&p, x, t);
                assert!((lhs - rhs).abs() <= 1e-8, "alpha={alpha} x={x} t={t}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn manufactured_closed_form_convolution() {
        let p = manufactured_sin(0.5).unwrap();
        let got = (p.exact_f_conv.as_ref().unwrap())(0.5, 1.0);
        // 2π²/Γ(3.5) + 1, 50-digit reference.
        assert_relative_eq!(
            got,
            6.939_549_863_287_155_034_970_472_514_260_091_415_481_1,
            max_relative = 1e-14
        );
    }

    #[test]
    fn registry() {
        for label in PROBLEM_LABELS {
            let p = by_label(label, 0.5, 1.0).unwrap();
            assert_eq!(p.label, label);
        }
        assert_eq!(
            by_label("nope", 0.5, 1.0).unwrap_err(),
            Error::UnknownProblem("nope".into())
        );
        assert!(by_label("zero", 1.0, 1.0).is_err());
        assert_eq!(by_label("zero", 0.5, 2.0).unwrap().final_time, 2.0);
    }

    #[test]
    fn spec_validation() {
        assert!(ProblemSpec::new("bad", 0.5, 1.0, |x| x, |_, _| 0.0).is_err());
        assert!(ProblemSpec::new("bad", 0.5, 0.0, |_| 0.0, |_, _| 0.0).is_err());
        let p = ProblemSpec::new("p", 0.5, 1.0, |x| (PI * x).sin(), |_, _| 0.0).unwrap();
        assert!(p.with_exact_u(|_, _| 0.0).is_err());
    }

    #[test]
    fn series_at_time_zero_is_phi() {
        let s = series_reference(&[1.0, 0.5, -0.25], 0.5, 3).unwrap();
        for x in [0.1, 0.37, 0.8] {
            let phi = (PI * x).sin() + 0.5 * (2.0 * PI * x).sin() - 0.25 * (3.0 * PI * x).sin();
            assert_relative_eq!(s.eval(x, 0.0).unwrap(), phi, max_relative = 1e-15);
        }
    }

    #[test]
    fn series_order_one_is_heat_mode() {
        let s = series_reference(&[1.0], 1.0, 1).unwrap();
        for (x, t) in [(0.5, 0.1), (0.25, 0.3)] {
            let want = (-PI * PI * t).exp() * (PI * x).sin();
            assert_relative_eq!(s.eval(x, t).unwrap(), want, max_relative = 1e-12);
        }
    }

    #[test]
    fn series_reference_value() {
        let s = series_reference(&[1.0], 0.5, 1).unwrap();
        // E_{0.5}(−π²·0.1), 50-digit reference.
        assert_relative_eq!(
            s.eval(0.5, 0.01).unwrap(),
            0.431_172_565_149_052_526_24,
            max_relative = 1e-13
        );
    }

    #[test]
    fn series_envelope_is_enforced() {
        let s = series_reference(&[1.0], 0.25, 1).unwrap();
        assert!(s.eval(0.5, 1.0).is_err());
        let s = series_reference(&[1.0], 0.5, 1).unwrap();
        // Terms peak near n ≈ 2π⁴ here: either the cap or the envelope refuses.
        let r = s.eval(0.5, 1.0);
        assert!(
            matches!(r, Err(Error::PrecisionLoss { .. } | Error::NonConvergence { .. })),
            "{r:?}"
        );
        let r = series_reference(&[1.0], 0.5, 1).unwrap().eval(0.5, 0.5);
        assert!(matches!(r, Err(Error::PrecisionLoss { .. })), "{r:?}");
        let s = series_reference(&[1.0, 1.0, 1.0], 0.5, 3).unwrap();
        assert!(s.eval(0.5, 1.0).is_err());
        assert!(series_reference(&[1.0], 0.5, 2).is_err());
        assert!(series_reference(&[1.0], 0.5, 0).is_err());
        // Without an accurate reference the registry omits the exact solution.
        assert!(sine_decay(0.25, 1.0).unwrap().exact_u.is_none());
        assert!(sine_decay(0.5, 0.01).unwrap().exact_u.is_some());
    }
}
