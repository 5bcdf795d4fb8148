//! Reference computations that share no code with the library's numerics.
#![allow(dead_code)]

use np_bayes::{np_decide, Classification, NpForm, Probability, SampleSummary, TestSetup};
use rand::rngs::StdRng;
use rand::SeedableRng;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

fn density(z: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

fn simpson(a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = density(m);
    (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
}

#[allow(clippy::too_many_arguments)]
fn adaptive(a: f64, fa: f64, b: f64, fb: f64, m: f64, fm: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let (lm, flm, left) = simpson(a, fa, m, fm);
    let (rm, frm, right) = simpson(m, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
        + adaptive(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
}

/// ∫_a^b φ(z) dz by adaptive Simpson with Richardson correction.
pub fn integrate_density(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    // Unit panels keep every subproblem well scaled.
    let panels = ((b - a).abs().ceil() as usize).max(1);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let lo = a + i as f64 * h;
            let hi = if i + 1 == panels { b } else { lo + h };
            let (flo, fhi) = (density(lo), density(hi));
            let (m, fm, whole) = simpson(lo, flo, hi, fhi);
            adaptive(lo, flo, hi, fhi, m, fm, whole, 1e-17, 40)
        })
        .sum()
}

/// Φ(t) = 1/2 + ∫_0^t φ for t ≥ 0; for t < 0 the tail ∫_{|t|}^∞ φ is
/// integrated directly (mass beyond |t| + 40 is below 1e-300).
pub fn oracle_cdf(t: f64) -> f64 {
    if t >= 0.0 {
        0.5 + integrate_density(0.0, t)
    } else {
        integrate_density(-t, -t + 40.0)
    }
}

/// Bisection on the oracle CDF.
pub fn oracle_quantile(p: f64) -> f64 {
    let (mut lo, mut hi) = (-10.0_f64, 10.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if oracle_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Classifies the reject/accept relation by sweeping `x̄` over a grid and
/// checking each implication pointwise with the library's decisions.
pub fn brute_force_classification(setup: &TestSetup, alpha: Probability, points: usize) -> Classification {
    let se = setup.standard_error();
    let lo = setup.theta0() - 4.0 * se;
    let hi = setup.theta1() + 4.0 * se;
    let mut reject_implies_accept = true;
    let mut accept_implies_reject = true;
    for i in 0..points {
        let xbar = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        let sample = SampleSummary::new(xbar, setup.n()).unwrap();
        let rejects = np_decide(&sample, setup, alpha, NpForm::RejectH0Form)
            .unwrap()
            .rejects_h0();
        let accepts = np_decide(&sample, setup, alpha, NpForm::AcceptH1Form)
            .unwrap()
            .accepts_h1();
        if rejects && !accepts {
            reject_implies_accept = false;
        }
        if accepts && !rejects {
            accept_implies_reject = false;
        }
    }
    match (reject_implies_accept, accept_implies_reject) {
        (true, true) => Classification::Equivalent,
        (true, false) => Classification::RejectImpliesAcceptOnly,
        (false, true) => Classification::AcceptImpliesRejectOnly,
        (false, false) => panic!("neither implication holds; thresholds are inconsistent"),
    }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn alpha(v: f64) -> Probability {
    Probability::new(v).unwrap()
}

pub fn setup(t0: f64, t1: f64, s: f64, n: u64) -> TestSetup {
    TestSetup::new(t0, t1, s, n).unwrap()
}
