mod common;

use common::*;
use np_bayes::{
    critical_value, std_normal_cdf, std_normal_pdf, std_normal_quantile, std_normal_sf,
    Probability, ZScore,
};
use proptest::prelude::*;

fn z(v: f64) -> ZScore {
    ZScore::new(v).unwrap()
}

fn cdf(t: f64) -> f64 {
    std_normal_cdf(z(t)).value()
}

fn quantile(p: f64) -> f64 {
    std_normal_quantile(Probability::new(p).unwrap()).unwrap().value()
}

#[test]
fn oracle_reproduces_frozen_values() {
    assert!((oracle_cdf(1.0) - 0.8413447460685429).abs() < 2e-16);
    assert!((oracle_cdf(-1.0) - 0.15865525393145705).abs() < 2e-16);
    assert!((oracle_quantile(0.975) - 1.959963984540054).abs() < 2e-15);
    assert!((oracle_quantile(0.95) - 1.6448536269514722).abs() < 2e-15);
}

#[test]
fn cdf_matches_integration_oracle() {
    let mut worst: f64 = 0.0;
    for i in -160..=160 {
        let t = i as f64 * 0.05;
        worst = worst.max((cdf(t) - oracle_cdf(t)).abs());
    }
    assert!(worst <= 1e-14, "worst abs error {worst:e}");
}

#[test]
fn quantile_matches_bisection_oracle() {
    for p in [1e-6, 0.001, 0.025, 0.1, 0.3, 0.5, 0.7, 0.95, 0.975, 0.999] {
        let got = quantile(p);
        let want = oracle_quantile(p);
        assert!((got - want).abs() < 1e-12, "p={p}: {got} vs {want}");
    }
}

#[test]
fn round_trip_on_dense_grid() {
    let (lo, hi) = (1e-8, 1.0 - 1e-8);
    let mut worst: f64 = 0.0;
    for i in 0..=100_000 {
        let p = lo + (hi - lo) * i as f64 / 100_000.0;
        worst = worst.max((cdf(quantile(p)) - p).abs());
    }
    assert!(worst <= 1e-12, "worst round trip {worst:e}");
}

#[test]
fn symmetry() {
    for i in -800..=800 {
        let t = i as f64 * 0.01;
        assert!((cdf(t) + cdf(-t) - 1.0).abs() <= 1e-15, "t={t}");
    }
}

#[test]
fn monotonicity() {
    let mut prev = cdf(-6.0);
    for i in 1..=1200 {
        let t = -6.0 + i as f64 * 0.01;
        let v = cdf(t);
        assert!(v > prev, "cdf not increasing at {t}");
        prev = v;
    }
    // Beyond 6 the lower tail carries the resolution.
    let mut prev = std_normal_sf(z(6.0)).value();
    for i in 1..=400 {
        let t = 6.0 + i as f64 * 0.01;
        let v = std_normal_sf(z(t)).value();
        assert!(v < prev);
        prev = v;
    }
    let mut prev = quantile(1e-8);
    for i in 1..=10_000 {
        let p = 1e-8 + (1.0 - 2e-8) * i as f64 / 10_000.0;
        let q = quantile(p);
        assert!(q > prev, "quantile not increasing at {p}");
        prev = q;
    }
}

#[test]
fn tail_definition_consistency() {
    for a in [0.2, 0.1, 0.05, 0.025, 0.01, 0.001] {
        let d = critical_value(Probability::new(a).unwrap()).unwrap().value();
        assert!((1.0 - cdf(d) - a).abs() <= 1e-12, "alpha={a}");
        // Same tail mass by direct integration.
        assert!((0.5 - integrate_density(0.0, d) - a).abs() <= 1e-12);
    }
}

#[test]
fn derivative_of_cdf_is_pdf() {
    let h = 1e-5;
    for i in -400..=400 {
        let t = i as f64 * 0.01;
        let fd = (cdf(t + h) - cdf(t - h)) / (2.0 * h);
        assert!((fd - std_normal_pdf(z(t))).abs() <= 1e-6, "t={t}");
    }
}

#[test]
fn far_tails_are_finite_and_ordered() {
    assert_eq!(cdf(40.0), 1.0);
    assert_eq!(cdf(-40.0), 0.0);
    assert!(std_normal_sf(z(10.0)).value() > 0.0);
    assert!(quantile(1e-15) < quantile(1e-14));
}

proptest! {
    #[test]
    fn prop_round_trip(p in 1e-8f64..(1.0 - 1e-8)) {
        prop_assert!((cdf(quantile(p)) - p).abs() <= 1e-12);
    }

    #[test]
    fn prop_quantile_antisymmetric(p in 1e-8f64..0.5) {
        let upper = 1.0 - p;
        prop_assert_eq!(quantile(upper), -quantile(1.0 - upper));
    }

    #[test]
    fn prop_cdf_in_unit_interval(t in -50.0f64..50.0) {
        let v = cdf(t);
        prop_assert!((0.0..=1.0).contains(&v));
        prop_assert!((v + std_normal_sf(z(t)).value() - 1.0).abs() <= 2e-16);
    }
}
