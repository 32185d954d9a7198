//! Log-gamma and the regularized incomplete gamma functions.
//!
//! `ln_gamma` uses the Lanczos approximation (g = 7, 9 terms, relative error
//! well below 1e-12 on the positive axis). The regularized lower incomplete
//! gamma `P(a, x)` uses the classic split: power series for `x < a + 1`,
//! continued fraction for the complement otherwise, which keeps the accuracy
//! uniform over sweep-sized parameter grids.

use crate::{Error, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const MAX_ITER: usize = 600;

/// Natural logarithm of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Γ(x)Γ(1-x) = π / sin(πx); 1-x lands in (0.5, 1).
        (PI / (PI * x).sin()).ln() - ln_gamma_unchecked(1.0 - x)
    } else {
        let z = x - 1.0;
        let mut a = LANCZOS[0];
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            a += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
    }
}

/// Regularized lower incomplete gamma function `P(a, x) = γ(a, x)/Γ(a)`
/// for `a > 0`, `x ≥ 0`.
pub fn reg_lower_gamma(a: f64, x: f64) -> Result<f64> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::Domain(format!(
            "reg_lower_gamma requires a > 0, got a = {a}"
        )));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "reg_lower_gamma requires x >= 0, got x = {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x < a + 1.0 {
        Ok(lower_gamma_series(a, x))
    } else {
        Ok(1.0 - upper_gamma_cf(a, x))
    }
}

/// Regularized upper incomplete gamma `Q(a, x) = Γ(a, x)/Γ(a)`, evaluated on
/// whichever side of the series/fraction split is stable. Used for gamma
/// CCDF tails where `1 - P` would lose all precision.
pub(crate) fn reg_upper_gamma(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else if x < a + 1.0 {
        1.0 - lower_gamma_series(a, x)
    } else {
        upper_gamma_cf(a, x)
    }
}

/// Power-series route for `P(a, x)`; converges for `x < a + 1` (and well
/// beyond, at more iterations).
pub(crate) fn lower_gamma_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma_unchecked(a)).exp()
}

/// Continued-fraction route for `Q(a, x)`; converges for `x ≥ a + 1`.
pub(crate) fn upper_gamma_cf(a: f64, x: f64) -> f64 {
    (-x + a * x.ln() - ln_gamma_unchecked(a)).exp() * upper_gamma_cf_factor(a, x)
}

/// The bare continued-fraction factor `H(a, x)` with
/// `Γ(a, x) = e^{-x} x^a H(a, x)`. Exposed separately because the gamma
/// hazard in the far tail reduces to `1/(x·H(α, βx))`.
pub(crate) fn upper_gamma_cf_factor(a: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    // b crosses zero when called below the series/fraction split (tests do).
    let mut d = 1.0 / if b.abs() < TINY { TINY } else { b };
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}
