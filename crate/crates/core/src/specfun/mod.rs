//! Self-contained special-function kernel.
//!
//! Accuracy targets: `erf` 1e-13 absolute, `ln_gamma` 1e-12 relative,
//! `reg_lower_gamma` 1e-12 absolute, matrix exponential/inverse 1e-10
//! entrywise on their contract checks.

mod erf;
mod gamma;
mod matrix;

pub use erf::{erf, erfcx};
pub use gamma::{ln_gamma, reg_lower_gamma};
pub use matrix::{mat_exp, mat_inverse, SquareMatrix, MAX_EXP_DIM, PIVOT_THRESHOLD};

pub(crate) use erf::erfc;
pub(crate) use gamma::{ln_gamma_unchecked, reg_upper_gamma, upper_gamma_cf_factor};
