//! Shared oracles for the integration suites: quadrature, independent
//! special-function series, a symmetric eigensolver, and the six figure
//! configurations. Everything here is deliberately separate from the
//! implementation routes it checks.
#![allow(dead_code)]

use delayq_core::dist::Distribution;
use delayq_core::specfun::SquareMatrix;
use delayq_core::stability::QueueParams;

const FRAC_2_SQRT_PI: f64 = 1.128_379_167_095_512_6;

/// Adaptive Simpson quadrature with Richardson correction. Splitting stops
/// once the correction reaches the requested tolerance or the local
/// floating-point noise floor, whichever is coarser.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
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
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        // The forming subtraction carries ~2 ulp of the panel magnitudes;
        // below that, further splitting only chases rounding jitter.
        let noise_floor = 1e-15 * (left.abs() + right.abs()).max(whole.abs());
        if depth == 0 || delta.abs() <= (15.0 * tol).max(noise_floor) {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Quadrature of a decaying integrand over `[0, cutoff]`, split into
/// doubling segments so a far cutoff cannot hide the head of the mass from
/// the adaptive probes.
pub fn integrate_decaying<F: Fn(f64) -> f64>(f: &F, cutoff: f64, tol: f64) -> f64 {
    let mut total = adaptive_simpson(f, 0.0, cutoff.min(1.0), tol);
    let mut lo = 1.0;
    while lo < cutoff {
        let hi = (2.0 * lo).min(cutoff);
        total += adaptive_simpson(f, lo, hi, tol);
        lo = hi;
    }
    total
}

/// Plain alternating Maclaurin series for erf, summed to machine precision.
/// Usable for |x| up to ~3 before cancellation dominates.
pub fn erf_taylor(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let mut n = 0u32;
    loop {
        n += 1;
        term *= -x * x / n as f64;
        let contrib = term / (2 * n + 1) as f64;
        sum += contrib;
        if contrib.abs() < 1e-18 * sum.abs() || n > 200 {
            break;
        }
    }
    FRAC_2_SQRT_PI * sum
}

/// Asymptotic series for erfcx at large arguments (x ≥ 5):
/// `erfcx(x) ~ (1/(x√π)) Σ (-1)ⁿ (2n-1)!!/(2x²)ⁿ`, truncated at the
/// smallest term.
pub fn erfcx_asymptotic(x: f64) -> f64 {
    let inv2x2 = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 0u32;
    loop {
        n += 1;
        let next = term * (2 * n - 1) as f64 * inv2x2;
        if next.abs() >= term.abs() || n > 300 {
            break;
        }
        term = next;
        sum += if n % 2 == 0 { term } else { -term };
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum / (x * std::f64::consts::PI.sqrt())
}

/// erfc by quadrature of the defining integral in the scaled variable
/// `u = t - x`, which keeps the integrand order-one regardless of how deep
/// into the tail x sits.
pub fn erfc_quadrature(x: f64) -> f64 {
    let scaled = adaptive_simpson(&|u: f64| (-2.0 * x * u - u * u).exp(), 0.0, 40.0, 1e-18);
    FRAC_2_SQRT_PI * (-x * x).exp() * scaled
}

/// Mean by quadrature: `∫ Ḡ` over the support for nonnegative families,
/// `∫ x g` for the normal.
pub fn mean_by_quadrature(d: &Distribution) -> f64 {
    match d {
        Distribution::Normal { alpha, sigma } => {
            let (a, b) = (alpha - 13.0 * sigma, alpha + 13.0 * sigma);
            adaptive_simpson(&|x| x * d.pdf(x), a, b, 1e-13)
        }
        _ => integrate_decaying(&|x| d.ccdf(x), tail_cutoff(d), 1e-14),
    }
}

/// Second raw moment by quadrature: `∫ 2xḠ` on the nonnegative families,
/// `∫ x²g` for the normal.
pub fn second_moment_by_quadrature(d: &Distribution) -> f64 {
    match d {
        Distribution::Normal { alpha, sigma } => {
            let (a, b) = (alpha - 13.0 * sigma, alpha + 13.0 * sigma);
            adaptive_simpson(&|x| x * x * d.pdf(x), a, b, 1e-13)
        }
        _ => integrate_decaying(&|x| 2.0 * x * d.ccdf(x), tail_cutoff(d), 1e-14),
    }
}

pub fn variance_by_quadrature(d: &Distribution) -> f64 {
    let m = mean_by_quadrature(d);
    second_moment_by_quadrature(d) - m * m
}

fn tail_cutoff(d: &Distribution) -> f64 {
    let mut x = 1.0;
    while d.ccdf(x) > 1e-18 && x < 1e9 {
        x *= 2.0;
    }
    x
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending.
pub fn jacobi_eigenvalues(mat: &SquareMatrix) -> Vec<f64> {
    let n = mat.dim();
    let mut a = vec![vec![0.0; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = mat.get(i, j);
        }
    }
    for _ in 0..500 {
        let mut off = 0.0;
        let (mut p, mut q) = (0, 1);
        for i in 0..n {
            for j in i + 1..n {
                if a[i][j].abs() > off {
                    off = a[i][j].abs();
                    p = i;
                    q = j;
                }
            }
        }
        if off < 1e-13 {
            break;
        }
        let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        for k in 0..n {
            let akp = a[k][p];
            let akq = a[k][q];
            a[k][p] = c * akp - s * akq;
            a[k][q] = s * akp + c * akq;
        }
        for k in 0..n {
            let apk = a[p][k];
            let aqk = a[q][k];
            a[p][k] = c * apk - s * aqk;
            a[q][k] = s * apk + c * aqk;
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// One figure configuration: distribution, the published critical delay,
/// and the published sub-/super-critical simulation delays.
pub struct FigureConfig {
    pub name: &'static str,
    pub dist: Distribution,
    pub delta_cr_published: f64,
    pub sub_delta: f64,
    pub super_delta: f64,
}

/// The six published configurations, all at N = 2, λ = 10, μ = 1.
pub fn figure_configs() -> Vec<FigureConfig> {
    let ln2 = std::f64::consts::LN_2;
    vec![
        FigureConfig {
            name: "exponential",
            dist: Distribution::exponential(1.0).unwrap(),
            delta_cr_published: 0.3617,
            sub_delta: 0.3,
            super_delta: 0.7,
        },
        FigureConfig {
            name: "normal",
            dist: Distribution::normal(1.0, 1.0).unwrap(),
            delta_cr_published: 0.0767,
            sub_delta: 0.05,
            super_delta: 0.1,
        },
        FigureConfig {
            name: "lognormal",
            dist: Distribution::log_normal(-0.5 * ln2, ln2.sqrt()).unwrap(),
            delta_cr_published: 0.6148,
            sub_delta: 0.5,
            super_delta: 1.0,
        },
        FigureConfig {
            name: "weibull",
            dist: Distribution::weibull(2.0, std::f64::consts::PI / 4.0).unwrap(),
            delta_cr_published: 0.0407,
            sub_delta: 0.03,
            super_delta: 0.06,
        },
        FigureConfig {
            name: "gamma",
            dist: Distribution::gamma(1.0, 1.0).unwrap(),
            delta_cr_published: 0.3617,
            sub_delta: 0.3,
            super_delta: 0.7,
        },
        FigureConfig {
            name: "phasetype",
            dist: Distribution::phase_type(
                vec![0.3, 0.7],
                SquareMatrix::from_diagonal(&[-1.8367, -0.8367]),
            )
            .unwrap(),
            delta_cr_published: 0.4443,
            sub_delta: 0.3,
            super_delta: 0.5,
        },
    ]
}

pub fn figure_params() -> QueueParams {
    QueueParams::new(2, 10.0, 1.0).unwrap()
}

pub fn assert_rel(got: f64, want: f64, tol: f64, context: &str) {
    let scale = want.abs().max(1e-300);
    assert!(
        (got - want).abs() <= tol * scale,
        "{context}: got {got:e}, want {want:e} (rel {:e})",
        (got - want).abs() / scale
    );
}
