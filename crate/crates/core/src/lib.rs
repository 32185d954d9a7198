//! Fluid model of `N` parallel infinite-server queues whose arrivals follow
//! a generalized multinomial-logit choice model driven by delayed
//! queue-length information.
//!
//! Customers join queue `i` with probability proportional to `G(q_i(t - Δ))`,
//! where `G` is the complementary CDF of a probability distribution and `Δ`
//! is the information delay. The crate provides:
//!
//! - [`dist`]: the six weight-distribution families (exponential, normal,
//!   log-normal, Weibull, gamma, phase-type) with density, CCDF, hazard rate,
//!   moments, and moment-matching constructors;
//! - [`stability`]: the symmetric equilibrium, the linearization eigenvalue
//!   `C = -(λ/N)·h(λ/(Nμ))`, regime classification, and the critical delay
//!   `Δ_cr = arccos(μ/C)/√(C²-μ²)`;
//! - [`dde`]: a fixed-step Runge-Kutta integrator for the delayed system
//!   with trajectory classification and phase-plot extraction;
//! - [`sweep`]: critical-delay curves against the mean or variance of the
//!   weight distribution, plus density-curve sampling;
//! - [`specfun`]: the self-contained special-function kernel backing the
//!   above (error functions, log-gamma, incomplete gamma, small dense
//!   matrix exponential and inverse).

pub mod dde;
pub mod dist;
mod error;
pub mod specfun;
pub mod stability;
pub mod sweep;

pub use error::{Error, Result};
