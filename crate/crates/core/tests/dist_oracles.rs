//! Distribution moments and identities against quadrature oracles.

mod support;

use delayq_core::dist::{from_moments, Distribution, FamilyTag};
use delayq_core::specfun::SquareMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{
    adaptive_simpson, assert_rel, erfc_quadrature, mean_by_quadrature, variance_by_quadrature,
};

fn random_distribution(rng: &mut ChaCha8Rng, family: FamilyTag) -> Distribution {
    match family {
        FamilyTag::Exponential => Distribution::exponential(rng.random_range(0.2..4.0)).unwrap(),
        FamilyTag::Normal => Distribution::normal(
            rng.random_range(-1.0..4.0),
            rng.random_range(0.4..2.5),
        )
        .unwrap(),
        FamilyTag::LogNormal => Distribution::log_normal(
            rng.random_range(-1.0..1.0),
            rng.random_range(0.3..1.2),
        )
        .unwrap(),
        FamilyTag::Weibull => Distribution::weibull(
            rng.random_range(0.6..3.5),
            rng.random_range(0.3..2.5),
        )
        .unwrap(),
        FamilyTag::Gamma => Distribution::gamma(
            rng.random_range(0.5..6.0),
            rng.random_range(0.3..3.0),
        )
        .unwrap(),
        FamilyTag::Hyperexp2 => {
            let m = rng.random_range(0.5..2.0);
            let v = m * m * rng.random_range(1.05..2.8);
            from_moments(FamilyTag::Hyperexp2, m, v).unwrap()
        }
    }
}

#[test]
fn moments_match_quadrature_for_all_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for family in FamilyTag::ALL {
        for _ in 0..20 {
            let d = random_distribution(&mut rng, family);
            let mean = d.mean().unwrap();
            let variance = d.variance().unwrap();
            assert_rel(
                mean,
                mean_by_quadrature(&d),
                1e-8,
                &format!("mean of {d}"),
            );
            assert_rel(
                variance,
                variance_by_quadrature(&d),
                1e-8,
                &format!("variance of {d}"),
            );
        }
    }
}

#[test]
fn densities_integrate_to_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for family in FamilyTag::ALL {
        let d = random_distribution(&mut rng, family);
        let total = match &d {
            Distribution::Normal { alpha, sigma } => adaptive_simpson(
                &|x| d.pdf(x),
                alpha - 13.0 * sigma,
                alpha + 13.0 * sigma,
                1e-12,
            ),
            _ => {
                // Shape-below-one densities blow up at the origin; start a
                // hair above it and add the exact head 1 - Ḡ(ε).
                let eps = 1e-9;
                let head = 1.0 - d.ccdf(eps);
                let mut hi = 1.0;
                while d.ccdf(hi) > 1e-16 && hi < 1e9 {
                    hi *= 2.0;
                }
                head + support::integrate_decaying(
                    &|x| if x < eps { 0.0 } else { d.pdf(x) },
                    hi,
                    1e-13,
                )
            }
        };
        assert_rel(total, 1.0, 1e-7, &format!("∫pdf for {d}"));
    }
}

#[test]
fn normal_hazard_matches_erfc_quadrature_oracle() {
    // Frozen value feeding the figure-class critical delay; the oracle is
    // direct quadrature of the Gaussian tail.
    let d = Distribution::normal(1.0, 1.0).unwrap();
    let z = 4.0_f64; // (5 - 1)/1
    let pdf = (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let tail = 0.5 * erfc_quadrature(z / std::f64::consts::SQRT_2);
    let want = pdf / tail;
    assert_rel(d.hazard(5.0).unwrap(), want, 1e-11, "normal hazard at 5");
    assert_rel(want, 4.225_607_144_489_471, 1e-11, "oracle self-check");
}

#[test]
fn truncated_normal_mean_identity() {
    // E[X | X > a] = α + σ·h_std((a - α)/σ), checked by quadrature.
    let (alpha, sigma) = (1.0, 1.0);
    let d = Distribution::normal(alpha, sigma).unwrap();
    let std = Distribution::normal(0.0, 1.0).unwrap();
    for &a in &[-1.0, 0.0, 1.0, 2.0, 3.0] {
        let tail_mass = d.ccdf(a);
        let conditional =
            adaptive_simpson(&|x| x * d.pdf(x), a, alpha + 14.0 * sigma, 1e-13) / tail_mass;
        let z = (a - alpha) / sigma;
        let want = alpha + sigma * std.hazard(z).unwrap();
        assert!(
            (conditional - want).abs() <= 1e-6,
            "E[X|X>{a}] = {conditional}, hazard identity gives {want}"
        );
    }
}

#[test]
fn gamma_ccdf_matches_quadrature() {
    // Ḡ(x) = 1 - γ(α, βx)/Γ(α) against direct quadrature of the density.
    let d = Distribution::gamma(2.0, 1.0).unwrap();
    let want = 1.0 - adaptive_simpson(&|x| d.pdf(x), 0.0, 2.0, 1e-14);
    assert_rel(d.ccdf(2.0), want, 1e-11, "gamma ccdf(2)");
    assert_rel(want, 0.406_005_849_709_838_07, 1e-11, "oracle self-check");
}

#[test]
fn phase_type_moments_match_quadrature_for_general_generator() {
    // Non-diagonal sub-generator: the inverse-power moment formula against
    // quadrature of the matrix-exponential CCDF.
    let d = Distribution::phase_type(
        vec![0.6, 0.4],
        SquareMatrix::new(2, vec![-2.0, 1.5, 0.3, -1.1]).unwrap(),
    )
    .unwrap();
    assert_rel(
        d.mean().unwrap(),
        mean_by_quadrature(&d),
        1e-9,
        "phase-type mean",
    );
    assert_rel(
        d.variance().unwrap(),
        variance_by_quadrature(&d),
        1e-8,
        "phase-type variance",
    );
}

#[test]
fn hyperexponential_moment_formula_matches_mixture_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..25 {
        let w: f64 = rng.random_range(0.05..0.95);
        let weights = [w, 1.0 - w];
        let rates = [rng.random_range(0.3..4.0), rng.random_range(0.3..4.0)];
        let d = Distribution::hyperexponential(&weights, &rates).unwrap();
        for n in 1..=3u32 {
            let factorial: f64 = (1..=n).map(f64::from).product();
            let closed: f64 = weights
                .iter()
                .zip(&rates)
                .map(|(p, r)| p * factorial / r.powi(n as i32))
                .sum();
            assert_rel(
                d.phase_type_moment(n).unwrap(),
                closed,
                1e-10,
                &format!("E[X^{n}]"),
            );
        }
    }
}
