//! Equilibrium, linearization eigenvalue, regime classification, and the
//! critical delay of the symmetric equilibrium.
//!
//! Linearizing the delayed system about the symmetric equilibrium
//! `q* = λ/(Nμ)` yields `N - 1` identical scalar delay equations whose
//! coefficient is the eigenvalue `C = -(λ/N)·h(q*)`, `h` being the hazard
//! rate of the weight distribution. A Hopf bifurcation occurs at
//! `Δ_cr = arccos(μ/C)/√(C² - μ²)` whenever `C < -μ`; for `|C| < μ` the
//! equilibrium is stable at every delay.

use crate::dist::Distribution;
use crate::specfun::SquareMatrix;
use crate::{Error, Result};
use num_complex::Complex64;

/// Largest queue count accepted by [`linearization_matrix`].
pub const MAX_LINEARIZATION_DIM: usize = 64;

/// Relative half-width (in units of μ) of the band around `|C| = μ` that
/// classifies as [`Regime::Boundary`]. Sweeps approach the asymptote
/// `|C| → μ` and must report "unbounded" instead of astronomically large
/// critical delays.
pub const BOUNDARY_REL_TOL: f64 = 1e-12;

/// The fluid system constants: queue count, arrival rate, service rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueueParams {
    n: usize,
    lambda: f64,
    mu: f64,
}

impl QueueParams {
    /// Requires `n ≥ 2` (a single queue has trivial choice probabilities)
    /// and finite positive rates.
    pub fn new(n: usize, lambda: f64, mu: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "queue count must be at least 2, got {n}"
            )));
        }
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::Domain(format!(
                "arrival rate must be finite and positive, got {lambda}"
            )));
        }
        if !mu.is_finite() || mu <= 0.0 {
            return Err(Error::Domain(format!(
                "service rate must be finite and positive, got {mu}"
            )));
        }
        Ok(Self { n, lambda, mu })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// Stability regime of the symmetric equilibrium as the delay varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `C < -μ`: stable for small delays, Hopf bifurcation at `Δ_cr`.
    HopfAtDeltaCr,
    /// `|C| < μ`: stable regardless of the delay.
    DelayIndependentStable,
    /// `|C| = μ` to within [`BOUNDARY_REL_TOL`]: the asymptote itself.
    Boundary,
    /// `C > μ`: unstable at every delay. Unreachable for this model
    /// (hazards are positive, so `C < 0`), kept for totality.
    UnstableAllDelay,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::HopfAtDeltaCr => "HopfAtDeltaCr",
            Regime::DelayIndependentStable => "DelayIndependentStable",
            Regime::Boundary => "Boundary",
            Regime::UnstableAllDelay => "UnstableAllDelay",
        })
    }
}

/// Full stability analysis of one (distribution, parameters) configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub q_star: f64,
    pub c: f64,
    pub regime: Regime,
    /// Crossing frequency, present iff the regime is [`Regime::HopfAtDeltaCr`].
    pub omega: Option<f64>,
    /// Critical delay, present iff the regime is [`Regime::HopfAtDeltaCr`].
    pub delta_cr: Option<f64>,
}

/// Symmetric equilibrium queue length `q* = λ/(Nμ)`.
pub fn equilibrium(p: &QueueParams) -> f64 {
    p.lambda / (p.n as f64 * p.mu)
}

/// Linearization eigenvalue `C = -(λ/N)·h(λ/(Nμ))`; negative for every
/// valid configuration.
pub fn eigenvalue_c(d: &Distribution, p: &QueueParams) -> Result<f64> {
    let h = d.hazard(equilibrium(p))?;
    Ok(-(p.lambda / p.n as f64) * h)
}

/// Classifies the regime from the eigenvalue and the service rate.
pub fn classify(c: f64, mu: f64) -> Regime {
    let tol = BOUNDARY_REL_TOL * mu;
    if (c.abs() - mu).abs() <= tol {
        Regime::Boundary
    } else if c < -mu {
        Regime::HopfAtDeltaCr
    } else if c.abs() < mu {
        Regime::DelayIndependentStable
    } else {
        Regime::UnstableAllDelay
    }
}

/// Crossing frequency and critical delay `(ω, Δ_cr)` for a Hopf-regime
/// eigenvalue: `ω = √(C² - μ²)`, `Δ_cr = arccos(μ/C)/ω`.
///
/// For `C < -μ < 0` the crossing point has `cos(ωΔ) = μ/C ∈ (-1, 0)` and
/// `sin(ωΔ) = -ω/C > 0`, i.e. `ωΔ` in the second quadrant, which is exactly
/// what the principal arccos returns, so this is the smallest positive
/// critical delay.
pub fn critical_delay(c: f64, mu: f64) -> Result<(f64, f64)> {
    let regime = classify(c, mu);
    if regime != Regime::HopfAtDeltaCr {
        return Err(Error::Regime(regime));
    }
    let omega = (c * c - mu * mu).sqrt();
    let delta_cr = (mu / c).acos() / omega;
    Ok((omega, delta_cr))
}

/// Residual of the characteristic equation, `r - C e^{-rΔ} + μ`.
pub fn char_residual(r: Complex64, c: f64, mu: f64, delta: f64) -> Complex64 {
    r - c * (-r * delta).exp() + mu
}

/// The linearization matrix `A`: diagonal `C(N-1)/N`, off-diagonal `-C/N`.
/// Its eigenvalues are 0 (once) and `C` (`N-1` times); row sums vanish.
pub fn linearization_matrix(c: f64, n: usize) -> SquareMatrix {
    assert!(
        (2..=MAX_LINEARIZATION_DIM).contains(&n),
        "linearization matrix is defined for 2 <= N <= {MAX_LINEARIZATION_DIM}, got {n}"
    );
    let mut m = SquareMatrix::zeros(n);
    let off = -c / n as f64;
    let diag = c * (n as f64 - 1.0) / n as f64;
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, if i == j { diag } else { off });
        }
    }
    m
}

/// Composes equilibrium, eigenvalue, classification, and critical delay
/// into one report.
pub fn analyze(d: &Distribution, p: &QueueParams) -> Result<StabilityReport> {
    let q_star = equilibrium(p);
    let c = eigenvalue_c(d, p)?;
    let regime = classify(c, p.mu);
    let (omega, delta_cr) = if regime == Regime::HopfAtDeltaCr {
        let (omega, delta_cr) = critical_delay(c, p.mu)?;
        (Some(omega), Some(delta_cr))
    } else {
        (None, None)
    };
    Ok(StabilityReport {
        q_star,
        c,
        regime,
        omega,
        delta_cr,
    })
}
