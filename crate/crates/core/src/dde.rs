//! Fixed-step integrator for the delayed N-queue system, with trajectory
//! classification and phase-plot extraction.
//!
//! The right-hand side of queue `i` is
//! `λ·Ḡ(q_i(t-Δ)) / Σ_j Ḡ(q_j(t-Δ)) - μ·q_i(t)`. Integration is explicit
//! RK4 with the step chosen as an exact divisor of the delay, `h = Δ/m`, so
//! stage lookups at `t - Δ` land either on stored grid nodes or exactly
//! halfway between two of them, where cubic Hermite interpolation over the
//! stored (state, derivative) pairs applies. With `Δ = 0` the scheme
//! degenerates to classical RK4 on the undelayed system.

use crate::dist::Distribution;
use crate::stability::QueueParams;
use crate::{Error, Result};

/// Constant history on `[-Δ, 0]`: one queue length per queue.
#[derive(Debug, Clone, PartialEq)]
pub struct HistorySpec {
    values: Vec<f64>,
}

impl HistorySpec {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Config("history must not be empty".into()));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Config(
                "history entries must be finite and nonnegative".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Integration run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    delta: f64,
    horizon: f64,
    h_target: f64,
    classify_window_frac: f64,
    amp_tol_rel: f64,
}

impl RunConfig {
    pub const DEFAULT_WINDOW_FRAC: f64 = 0.2;
    pub const DEFAULT_AMP_TOL_REL: f64 = 1e-3;

    pub fn new(delta: f64, horizon: f64, h_target: f64) -> Result<Self> {
        if !delta.is_finite() || delta < 0.0 {
            return Err(Error::Config(format!(
                "delay must be finite and nonnegative, got {delta}"
            )));
        }
        if !horizon.is_finite() || horizon <= 0.0 {
            return Err(Error::Config(format!(
                "horizon must be positive, got {horizon}"
            )));
        }
        if !h_target.is_finite() || h_target <= 0.0 {
            return Err(Error::Config(format!(
                "step target must be positive, got {h_target}"
            )));
        }
        Ok(Self {
            delta,
            horizon,
            h_target,
            classify_window_frac: Self::DEFAULT_WINDOW_FRAC,
            amp_tol_rel: Self::DEFAULT_AMP_TOL_REL,
        })
    }

    pub fn with_window_frac(mut self, frac: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&frac) || frac <= 0.0 {
            return Err(Error::Config(format!(
                "classification window fraction must lie in (0, 1), got {frac}"
            )));
        }
        self.classify_window_frac = frac;
        Ok(self)
    }

    pub fn with_amp_tol_rel(mut self, tol: f64) -> Result<Self> {
        if !tol.is_finite() || tol <= 0.0 {
            return Err(Error::Config(format!(
                "amplitude tolerance must be positive, got {tol}"
            )));
        }
        self.amp_tol_rel = tol;
        Ok(self)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn h_target(&self) -> f64 {
        self.h_target
    }

    pub fn classify_window_frac(&self) -> f64 {
        self.classify_window_frac
    }

    pub fn amp_tol_rel(&self) -> f64 {
        self.amp_tol_rel
    }

    /// Actual step: `Δ/m` with `m = ceil(Δ/h_target)` when delayed,
    /// otherwise the target itself.
    pub fn step(&self) -> f64 {
        if self.delta > 0.0 {
            self.delta / (self.delta / self.h_target).ceil()
        } else {
            self.h_target
        }
    }

    /// Horizons under ten delays rarely outlive the transient; recommended
    /// minimum, reported as a warning rather than an error.
    pub fn short_horizon(&self) -> bool {
        self.delta > 0.0 && self.horizon < 10.0 * self.delta
    }
}

/// Step target keeping interpolation resolution and stiffness in check:
/// `min(Δ/100, 1/(50|C|))` for delayed runs.
pub fn suggested_h_target(delta: f64, c_magnitude: f64) -> f64 {
    let stiffness = 1.0 / (50.0 * c_magnitude.max(1e-6));
    if delta > 0.0 {
        (delta / 100.0).min(stiffness)
    } else {
        stiffness.min(0.02)
    }
}

/// Default horizon: `max(40, 30·Δ_cr)` when a critical delay exists.
pub fn suggested_horizon(delta_cr: Option<f64>) -> f64 {
    match delta_cr {
        Some(d) => 40.0f64.max(30.0 * d),
        None => 40.0,
    }
}

/// Simulated trajectory on a uniform grid starting at `t = 0`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<Vec<f64>>,
    derivs: Vec<Vec<f64>>,
    step: f64,
    n_queues: usize,
}

impl Trajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[Vec<f64>] {
        &self.states
    }

    pub fn derivs(&self) -> &[Vec<f64>] {
        &self.derivs
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn n_queues(&self) -> usize {
        self.n_queues
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn queue_series(&self, queue: usize) -> impl Iterator<Item = f64> + '_ {
        self.states.iter().map(move |s| s[queue])
    }
}

/// Trajectory verdict over the tail window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ConvergedToEquilibrium,
    Oscillatory,
    Indeterminate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::ConvergedToEquilibrium => "ConvergedToEquilibrium",
            Verdict::Oscillatory => "Oscillatory",
            Verdict::Indeterminate => "Indeterminate",
        })
    }
}

/// Classification of a trajectory's tail window.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    /// Peak-to-peak amplitude of queue 1 over the tail window.
    pub amplitude: f64,
    /// Mean spacing of strict local maxima of queue 1 in the tail window,
    /// when at least two exist.
    pub period_estimate: Option<f64>,
}

/// Right-hand side of the delayed system:
/// component `i` is `λ·Ḡ(q_delayed_i)/Σ_j Ḡ(q_delayed_j) - μ·q_now_i`.
pub fn rhs(
    d: &Distribution,
    q_now: &[f64],
    q_delayed: &[f64],
    p: &QueueParams,
) -> Result<Vec<f64>> {
    if q_now.len() != p.n() || q_delayed.len() != p.n() {
        return Err(Error::Domain(format!(
            "state vectors must have length {}, got {} and {}",
            p.n(),
            q_now.len(),
            q_delayed.len()
        )));
    }
    let weights: Vec<f64> = q_delayed.iter().map(|&q| d.ccdf(q)).collect();
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::DegenerateShares);
    }
    Ok(q_now
        .iter()
        .zip(&weights)
        .map(|(&q, &w)| p.lambda() * w / total - p.mu() * q)
        .collect())
}

/// Integrates the system from the constant history over `[0, horizon]`.
///
/// Queue lengths stay nonnegative for nonnegative histories in this model;
/// a computed state below `-1e-9` means the step size is unusable and aborts
/// the run rather than being clamped.
pub fn simulate(
    d: &Distribution,
    p: &QueueParams,
    hist: &HistorySpec,
    cfg: &RunConfig,
) -> Result<Trajectory> {
    let n = p.n();
    if hist.values().len() != n {
        return Err(Error::Config(format!(
            "history has {} entries but the system has {n} queues",
            hist.values().len()
        )));
    }

    let h = cfg.step();
    let lag_steps = if cfg.delta > 0.0 {
        (cfg.delta / cfg.h_target).ceil() as usize
    } else {
        0
    };
    let steps = ((cfg.horizon / h) - 1e-9).ceil().max(1.0) as usize;

    // Buffer indices 0..=lag_steps hold the history at t = -Δ..0; the
    // derivative attached to pre-zero nodes is the right-hand side evaluated
    // with both arguments equal to the history vector, which only influences
    // interpolation during the first delay interval.
    let total = lag_steps + steps + 1;
    let mut states: Vec<Vec<f64>> = Vec::with_capacity(total);
    let mut derivs: Vec<Vec<f64>> = Vec::with_capacity(total);
    let hist_vec = hist.values().to_vec();
    let hist_deriv = rhs(d, &hist_vec, &hist_vec, p)?;
    for _ in 0..=lag_steps {
        states.push(hist_vec.clone());
        derivs.push(hist_deriv.clone());
    }

    // Cubic Hermite midpoint of the segment [idx, idx+1].
    let hermite_mid = |states: &[Vec<f64>], derivs: &[Vec<f64>], idx: usize| -> Vec<f64> {
        let (y0, y1) = (&states[idx], &states[idx + 1]);
        let (f0, f1) = (&derivs[idx], &derivs[idx + 1]);
        (0..n)
            .map(|i| 0.5 * (y0[i] + y1[i]) + 0.125 * h * (f0[i] - f1[i]))
            .collect()
    };

    let axpy = |y: &[f64], scale: f64, k: &[f64]| -> Vec<f64> {
        y.iter().zip(k).map(|(a, b)| a + scale * b).collect()
    };

    for step_idx in 0..steps {
        let k = lag_steps + step_idx;
        let y = states[k].clone();

        let (k1, k2, k3, k4);
        if lag_steps == 0 {
            // Classical RK4 on the undelayed system.
            k1 = rhs(d, &y, &y, p)?;
            let y2 = axpy(&y, 0.5 * h, &k1);
            k2 = rhs(d, &y2, &y2, p)?;
            let y3 = axpy(&y, 0.5 * h, &k2);
            k3 = rhs(d, &y3, &y3, p)?;
            let y4 = axpy(&y, h, &k3);
            k4 = rhs(d, &y4, &y4, p)?;
        } else {
            let delayed_start = &states[k - lag_steps];
            let delayed_mid = hermite_mid(&states, &derivs, k - lag_steps);
            let delayed_end = &states[k - lag_steps + 1];

            k1 = rhs(d, &y, delayed_start, p)?;
            let y2 = axpy(&y, 0.5 * h, &k1);
            k2 = rhs(d, &y2, &delayed_mid, p)?;
            let y3 = axpy(&y, 0.5 * h, &k2);
            k3 = rhs(d, &y3, &delayed_mid, p)?;
            let y4 = axpy(&y, h, &k3);
            k4 = rhs(d, &y4, delayed_end, p)?;
        }

        let next: Vec<f64> = (0..n)
            .map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
            .collect();
        for (i, &q) in next.iter().enumerate() {
            if !q.is_finite() || q < -1e-9 {
                return Err(Error::NumericalFailure(format!(
                    "queue {} reached {q} at t = {}",
                    i + 1,
                    (step_idx + 1) as f64 * h
                )));
            }
        }

        let next_deriv = if lag_steps == 0 {
            rhs(d, &next, &next, p)?
        } else {
            rhs(d, &next, &states[k + 1 - lag_steps], p)?
        };
        states.push(next);
        derivs.push(next_deriv);
    }

    let times: Vec<f64> = (0..=steps).map(|i| i as f64 * h).collect();
    Ok(Trajectory {
        times,
        states: states.split_off(lag_steps),
        derivs: derivs.split_off(lag_steps),
        step: h,
        n_queues: n,
    })
}

/// Classifies the tail window of a trajectory against the equilibrium.
///
/// The window is the final `classify_window_frac` of the time span; the
/// trajectory must cover at least two windows. Verdicts use the peak-to-peak
/// amplitude of queue 1 against the threshold `amp_tol_rel · q*`, with a
/// ±20% grace band around the threshold mapping to
/// [`Verdict::Indeterminate`] so near-critical runs do not flap.
pub fn classify_trajectory(
    t: &Trajectory,
    q_star: f64,
    cfg: &RunConfig,
) -> Result<Classification> {
    let span = match t.times().last() {
        Some(&last) if last > 0.0 => last,
        _ => return Err(Error::InsufficientData("empty trajectory".into())),
    };
    let window = cfg.classify_window_frac * span;
    if span < 2.0 * window {
        return Err(Error::InsufficientData(format!(
            "trajectory spans {span} but needs at least two windows of {window}"
        )));
    }
    let start = span - window;
    let first_idx = t.times().iter().position(|&tt| tt >= start).unwrap();
    if t.len() - first_idx < 4 {
        return Err(Error::InsufficientData(
            "tail window holds fewer than four grid points".into(),
        ));
    }

    let q1: Vec<f64> = t.states()[first_idx..].iter().map(|s| s[0]).collect();
    let max = q1.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = q1.iter().cloned().fold(f64::INFINITY, f64::min);
    let amplitude = max - min;

    let threshold = cfg.amp_tol_rel * q_star;
    let final_state = t.states().last().unwrap();
    let terminal_ok = final_state.iter().all(|&q| (q - q_star).abs() <= threshold);

    let verdict = if amplitude > 1.2 * threshold {
        Verdict::Oscillatory
    } else if amplitude < 0.8 * threshold && terminal_ok {
        Verdict::ConvergedToEquilibrium
    } else {
        Verdict::Indeterminate
    };

    // Strict local maxima of queue 1 inside the window.
    let window_times = &t.times()[first_idx..];
    let mut maxima = Vec::new();
    for i in 1..q1.len() - 1 {
        if q1[i] > q1[i - 1] && q1[i] > q1[i + 1] {
            maxima.push(window_times[i]);
        }
    }
    let period_estimate = if maxima.len() >= 2 {
        Some((maxima[maxima.len() - 1] - maxima[0]) / (maxima.len() - 1) as f64)
    } else {
        None
    };

    Ok(Classification {
        verdict,
        amplitude,
        period_estimate,
    })
}

/// One phase-plot sample: queue index (1-based), length, and derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub queue: usize,
    pub q: f64,
    pub dq: f64,
}

/// Phase-plot rows, one per stored grid point per queue, with the
/// derivative taken from the stored right-hand-side values.
pub fn phase_data(t: &Trajectory) -> Vec<PhasePoint> {
    let mut rows = Vec::with_capacity(t.len() * t.n_queues());
    for queue in 0..t.n_queues() {
        for (state, deriv) in t.states().iter().zip(t.derivs()) {
            rows.push(PhasePoint {
                queue: queue + 1,
                q: state[queue],
                dq: deriv[queue],
            });
        }
    }
    rows
}
