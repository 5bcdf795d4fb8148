mod common;

use common::*;
use np_bayes::{
    analyze_duality, bayes_effective_level, bayes_threshold, consistency_gap, matched_alpha,
    matched_theta1, np_accept_h1_threshold, np_reject_threshold, Classification, TestSetup,
    DEFAULT_TOLERANCE,
};
use proptest::prelude::*;

#[test]
fn brute_force_agrees_on_examples() {
    let cases = [
        (1.6448536269514722, Classification::Equivalent),
        (3.0, Classification::AcceptImpliesRejectOnly),
        (1.0, Classification::RejectImpliesAcceptOnly),
    ];
    for (t1, want) in cases {
        let st = setup(0.0, t1, 1.0, 4);
        let report = analyze_duality(&st, alpha(0.05), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(report.classification, want);
        assert_eq!(brute_force_classification(&st, alpha(0.05), 10_000), want);
    }
}

#[test]
fn matched_point_hits_midpoint() {
    let m = matched_theta1(0.0, 1.0, 4, alpha(0.05)).unwrap();
    let st = setup(0.0, m.theta1, 1.0, 4);
    let r = analyze_duality(&st, alpha(0.05), DEFAULT_TOLERANCE).unwrap();
    assert!((r.t1 - bayes_threshold(&st)).abs() <= 1e-12);
    assert!((r.t2 - bayes_threshold(&st)).abs() <= 1e-12);
}

fn arb_case() -> impl Strategy<Value = (f64, f64, u64, f64)> {
    (-10.0f64..10.0, 0.1f64..10.0, 1u64..1000, 0.001f64..0.4)
}

proptest! {
    #[test]
    fn prop_gap_identity((t0, s, n, a) in arb_case(), delta in 0.01f64..20.0) {
        let st = TestSetup::new(t0, t0 + delta, s, n).unwrap();
        let r = analyze_duality(&st, alpha(a), DEFAULT_TOLERANCE).unwrap();
        let diff = np_accept_h1_threshold(&st, alpha(a)).unwrap()
            - np_reject_threshold(&st, alpha(a)).unwrap();
        prop_assert!((r.gap - diff).abs() <= 1e-14);
        prop_assert!((r.gap - consistency_gap(&st, alpha(a)).unwrap()).abs() <= 1e-12);
        match r.classification {
            Classification::Equivalent => prop_assert!(r.gap.abs() <= r.tolerance),
            Classification::AcceptImpliesRejectOnly => prop_assert!(r.gap > r.tolerance && r.t2 > r.t1),
            Classification::RejectImpliesAcceptOnly => prop_assert!(r.gap < -r.tolerance && r.t2 < r.t1),
        }
    }

    #[test]
    fn prop_fixed_point((t0, s, n, a) in arb_case()) {
        let m = matched_theta1(t0, s, n, alpha(a)).unwrap();
        prop_assert!(!m.degenerate);
        let st = TestSetup::new(t0, m.theta1, s, n).unwrap();
        prop_assert!(consistency_gap(&st, alpha(a)).unwrap().abs() <= 1e-12);
        prop_assert!((matched_alpha(&st).value() - a).abs() <= 1e-10);
        prop_assert_eq!(matched_alpha(&st), bayes_effective_level(&st));
    }

    #[test]
    fn prop_degenerate_flag(t0 in -10.0f64..10.0, a in 0.5f64..0.999) {
        let m = matched_theta1(t0, 1.0, 4, alpha(a)).unwrap();
        prop_assert!(m.degenerate);
        prop_assert!(m.theta1 <= t0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn prop_implication_soundness((t0, s, n, a) in arb_case(), class in 0u8..3, spread in 0.2f64..3.0) {
        let se = s / (n as f64).sqrt();
        let matched = matched_theta1(t0, s, n, alpha(a)).unwrap().theta1;
        let t1 = match class {
            0 => matched,
            1 => matched + spread * se,
            _ => t0 + (matched - t0) * (1.0 - spread / 3.5),
        };
        prop_assume!(t1 > t0 && (class == 0 || (t1 - matched).abs() > 0.05 * se));
        let st = TestSetup::new(t0, t1, s, n).unwrap();
        let r = analyze_duality(&st, alpha(a), DEFAULT_TOLERANCE).unwrap();
        prop_assert_eq!(brute_force_classification(&st, alpha(a), 4000), r.classification);
    }
}
