//! Critical-delay sweeps: how `Δ_cr` moves as the mean or variance of the
//! weight distribution varies, plus the matching density-curve samples.
//!
//! Each grid point resolves a distribution (through moment matching, or a
//! rate solve for the pinned-shape Weibull modes), analyzes it, and lands in
//! one ordered row. Per-point failures are encoded in the rows — an
//! infeasible moment combination never aborts the sweep.

use crate::dist::{self, from_moments, Distribution, FamilyTag};
use crate::stability::{self, analyze, QueueParams, Regime};
use crate::{Error, Result};

/// What varies along the grid and what stays pinned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepMode {
    /// Sweep the mean. Two-parameter families pin the variance; the
    /// exponential has no freedom left, so `fixed_variance` must be `None`.
    Mean { fixed_variance: Option<f64> },
    /// Sweep the variance at a pinned mean (same exponential caveat).
    Variance { fixed_mean: Option<f64> },
    /// Sweep the mean of a Weibull with pinned shape.
    WeibullMean { fixed_alpha: f64 },
    /// Sweep the variance of a Weibull with pinned shape.
    WeibullVariance { fixed_alpha: f64 },
}

/// A sweep: family, mode, strictly increasing positive grid, and the queue
/// constants.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    family: FamilyTag,
    mode: SweepMode,
    grid: Vec<f64>,
    params: QueueParams,
}

impl SweepSpec {
    pub fn new(
        family: FamilyTag,
        mode: SweepMode,
        grid: Vec<f64>,
        params: QueueParams,
    ) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::Config("sweep grid must not be empty".into()));
        }
        if grid.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::Config(
                "sweep grid values must be finite and positive".into(),
            ));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(
                "sweep grid must be strictly increasing".into(),
            ));
        }
        match mode {
            SweepMode::Mean { fixed_variance: Some(v) } if v <= 0.0 || !v.is_finite() => {
                return Err(Error::Config(format!(
                    "fixed variance must be positive, got {v}"
                )));
            }
            SweepMode::Variance { fixed_mean: Some(m) } if m <= 0.0 || !m.is_finite() => {
                return Err(Error::Config(format!(
                    "fixed mean must be positive, got {m}"
                )));
            }
            SweepMode::WeibullMean { fixed_alpha } | SweepMode::WeibullVariance { fixed_alpha }
                if fixed_alpha <= 0.0 || !fixed_alpha.is_finite() =>
            {
                return Err(Error::Config(format!(
                    "fixed Weibull shape must be positive, got {fixed_alpha}"
                )));
            }
            _ => {}
        }
        // The exponential is one-parameter: sweeping its mean or variance
        // determines the other statistic, so pinning one is contradictory.
        let fixed_given = matches!(
            mode,
            SweepMode::Mean { fixed_variance: Some(_) } | SweepMode::Variance { fixed_mean: Some(_) }
        );
        let fixed_missing = matches!(
            mode,
            SweepMode::Mean { fixed_variance: None } | SweepMode::Variance { fixed_mean: None }
        );
        if family == FamilyTag::Exponential && fixed_given {
            return Err(Error::Config(
                "the exponential family has a single parameter; omit the fixed statistic".into(),
            ));
        }
        if family != FamilyTag::Exponential && fixed_missing {
            return Err(Error::Config(format!(
                "family {family} needs a fixed statistic for this sweep mode"
            )));
        }
        let weibull_mode = matches!(
            mode,
            SweepMode::WeibullMean { .. } | SweepMode::WeibullVariance { .. }
        );
        if weibull_mode && family != FamilyTag::Weibull {
            return Err(Error::Config(
                "pinned-shape modes apply to the weibull family only".into(),
            ));
        }
        Ok(Self {
            family,
            mode,
            grid,
            params,
        })
    }

    pub fn family(&self) -> FamilyTag {
        self.family
    }

    pub fn mode(&self) -> SweepMode {
        self.mode
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn params(&self) -> &QueueParams {
        &self.params
    }

    /// Resolves the distribution at one swept value.
    pub fn resolve(&self, swept: f64) -> Result<Distribution> {
        match self.mode {
            SweepMode::Mean { fixed_variance } => match self.family {
                FamilyTag::Exponential => Distribution::exponential(1.0 / swept),
                _ => from_moments(self.family, swept, fixed_variance.unwrap()),
            },
            SweepMode::Variance { fixed_mean } => match self.family {
                FamilyTag::Exponential => Distribution::exponential(1.0 / swept.sqrt()),
                _ => from_moments(self.family, fixed_mean.unwrap(), swept),
            },
            SweepMode::WeibullMean { fixed_alpha } => {
                Distribution::weibull(fixed_alpha, dist::weibull_rate_for_mean(fixed_alpha, swept))
            }
            SweepMode::WeibullVariance { fixed_alpha } => Distribution::weibull(
                fixed_alpha,
                dist::weibull_rate_for_variance(fixed_alpha, swept),
            ),
        }
    }
}

/// Why a row carries no critical delay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowNote {
    /// The moment combination is not realizable by the family.
    Infeasible,
    /// The configuration is stable at every delay (`|C| ≤ μ`).
    Unbounded,
}

impl std::fmt::Display for RowNote {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RowNote::Infeasible => "Infeasible",
            RowNote::Unbounded => "Unbounded",
        })
    }
}

/// One sample of the critical-delay curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub swept: f64,
    pub resolved: Option<Distribution>,
    pub c: Option<f64>,
    pub regime: Option<Regime>,
    pub delta_cr: Option<f64>,
    pub note: Option<RowNote>,
}

/// Runs the sweep, one row per grid value in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Vec<SweepRow> {
    spec.grid
        .iter()
        .map(|&swept| {
            let resolved = match spec.resolve(swept) {
                Ok(d) => d,
                Err(_) => {
                    return SweepRow {
                        swept,
                        resolved: None,
                        c: None,
                        regime: None,
                        delta_cr: None,
                        note: Some(RowNote::Infeasible),
                    }
                }
            };
            match analyze(&resolved, &spec.params) {
                Ok(report) => {
                    let note = match report.regime {
                        Regime::DelayIndependentStable | Regime::Boundary => {
                            Some(RowNote::Unbounded)
                        }
                        _ => None,
                    };
                    SweepRow {
                        swept,
                        resolved: Some(resolved),
                        c: Some(report.c),
                        regime: Some(report.regime),
                        delta_cr: report.delta_cr,
                        note,
                    }
                }
                // Hazard overflow deep in a tail: encoded per-row, as for
                // infeasible moments.
                Err(_) => SweepRow {
                    swept,
                    resolved: Some(resolved),
                    c: None,
                    regime: None,
                    delta_cr: None,
                    note: Some(RowNote::Infeasible),
                },
            }
        })
        .collect()
}

/// One density sample belonging to a selected swept value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityRow {
    pub swept: f64,
    pub x: f64,
    pub pdf: f64,
}

/// Density curves for selected swept values on a common `x` grid.
///
/// Fails listing every infeasible selection; feasible selections alone
/// produce no rows in that case.
pub fn density_curves(
    spec: &SweepSpec,
    selected: &[f64],
    x_grid: &[f64],
) -> Result<Vec<DensityRow>> {
    let mut resolved = Vec::with_capacity(selected.len());
    let mut infeasible = Vec::new();
    for &swept in selected {
        match spec.resolve(swept) {
            Ok(d) => resolved.push((swept, d)),
            Err(_) => infeasible.push(swept),
        }
    }
    if !infeasible.is_empty() {
        let listing = infeasible
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::Infeasible(format!(
            "selected swept values are infeasible for {}: {listing}",
            spec.family
        )));
    }
    let mut rows = Vec::with_capacity(resolved.len() * x_grid.len());
    for (swept, d) in &resolved {
        for &x in x_grid {
            rows.push(DensityRow {
                swept: *swept,
                x,
                pdf: d.pdf(x),
            });
        }
    }
    Ok(rows)
}

/// Locates the swept-statistic value where `|C| = μ` (the asymptote of the
/// critical-delay curve) by bisection.
///
/// The bracket endpoints must classify as Hopf on one side and
/// delay-independent stable on the other. Converges to relative width
/// 1e-10 of the statistic.
pub fn locate_asymptote(spec: &SweepSpec, bracket: (f64, f64)) -> Result<f64> {
    const REL_TOL: f64 = 1e-10;
    const MAX_ITER: usize = 200;

    let regime_at = |value: f64| -> Result<Regime> {
        let d = spec.resolve(value)?;
        let c = stability::eigenvalue_c(&d, &spec.params)?;
        Ok(stability::classify(c, spec.params.mu()))
    };

    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Bracket(format!("invalid bracket ({lo}, {hi})")));
    }
    let regime_lo = regime_at(lo)?;
    let regime_hi = regime_at(hi)?;
    let straddles = matches!(
        (regime_lo, regime_hi),
        (Regime::HopfAtDeltaCr, Regime::DelayIndependentStable)
            | (Regime::DelayIndependentStable, Regime::HopfAtDeltaCr)
    );
    if !straddles {
        return Err(Error::Bracket(format!(
            "endpoints classify as {regime_lo} and {regime_hi}; need Hopf on one side and delay-independent stable on the other"
        )));
    }

    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= REL_TOL * mid.abs() {
            return Ok(mid);
        }
        match regime_at(mid)? {
            Regime::Boundary => return Ok(mid),
            r if r == regime_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(0.5 * (lo + hi))
}
