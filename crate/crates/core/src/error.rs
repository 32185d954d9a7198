use crate::stability::Regime;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A pivot fell below the elimination threshold.
    #[error("singular matrix: pivot magnitude {pivot:e} at or below threshold {threshold:e}")]
    SingularMatrix { pivot: f64, threshold: f64 },

    /// Matrix dimension exceeds the supported size.
    #[error("matrix dimension {dim} exceeds the limit of {limit}")]
    DimensionLimit { dim: usize, limit: usize },

    /// The CCDF underflowed and the family has no stable closed-form hazard.
    #[error("hazard overflow: CCDF underflowed to zero at x = {x}")]
    HazardOverflow { x: f64 },

    /// Requested moments cannot be realized by the requested family.
    #[error("infeasible moments: {0}")]
    Infeasible(String),

    /// An iterative solver failed to converge.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Operation requires the Hopf regime.
    #[error("regime error: critical delay is undefined in regime {0}")]
    Regime(Regime),

    /// All delayed CCDF weights vanished, so the choice shares are undefined.
    #[error("degenerate choice denominator: all delayed CCDF weights are zero")]
    DegenerateShares,

    /// The integrator produced a state outside the model's invariant region.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// Not enough data to classify a trajectory.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Invalid run or sweep configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A textual input (distribution literal, flag value) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// Bisection bracket endpoints do not straddle the stability boundary.
    #[error("bracket error: {0}")]
    Bracket(String),
}

pub type Result<T> = std::result::Result<T, Error>;
