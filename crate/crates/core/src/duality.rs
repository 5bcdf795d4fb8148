//! When does rejecting H0 mean accepting H1?
//!
//! With `t1 = θ0 + d_α σ/√n` (reject H0 when `x̄ ≥ t1`) and
//! `t2 = θ1 - d_α σ/√n` (accept H1 when `x̄ ≥ t2`):
//!
//! * `t2 ≤ t1`: every rejection of H0 is also an acceptance of H1;
//! * `t1 ≤ t2`: every acceptance of H1 is also a rejection of H0;
//! * both, i.e. `θ1 - θ0 = 2 d_α σ/√n`: the two events coincide and both
//!   cutoffs sit at the midpoint `(θ0 + θ1)/2`.
//!
//! The gap `t2 - t1 = (θ1 - θ0) - 2 d_α σ/√n` decides which case applies.
//! Exact equality is not decidable in floating point, so the equivalent case
//! is declared when `|gap| ≤ tolerance`.

use serde::Serialize;

use crate::decision_rules::{
    effective_level, np_accept_h1_threshold, np_reject_threshold, open_alpha, TestSetup,
};
use crate::error::{finite, Error, Result};
use crate::normal_kernel::{self, Probability};

/// Default absolute tolerance on the gap, in units of the sample mean.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    /// `t2 < t1`: rejecting H0 implies accepting H1, not conversely.
    RejectImpliesAcceptOnly,
    /// `t2 > t1`: accepting H1 implies rejecting H0, not conversely.
    AcceptImpliesRejectOnly,
    /// `t1 = t2`: the two events coincide.
    Equivalent,
}

impl Classification {
    pub fn reject_implies_accept(self) -> bool {
        !matches!(self, Classification::AcceptImpliesRejectOnly)
    }

    pub fn accept_implies_reject(self) -> bool {
        !matches!(self, Classification::RejectImpliesAcceptOnly)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualityReport {
    pub classification: Classification,
    /// `t2 - t1`.
    pub gap: f64,
    /// Cutoff for rejecting H0.
    pub t1: f64,
    /// Cutoff for accepting H1.
    pub t2: f64,
    pub tolerance: f64,
}

/// Alternative mean at which rejecting H0 and accepting H1 coincide.
///
/// For `α ≥ 0.5` the value is not above `θ0`, so it cannot form a valid
/// [`TestSetup`]; `degenerate` flags that case instead of failing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchedAlternative {
    pub theta1: f64,
    pub degenerate: bool,
}

/// `(θ1 - θ0) - 2 d_α σ/√n`; zero exactly at the matched alternative.
pub fn consistency_gap(setup: &TestSetup, alpha: Probability) -> Result<f64> {
    let d = normal_kernel::critical(open_alpha(alpha)?);
    Ok((setup.theta1() - setup.theta0()) - 2.0 * d * setup.standard_error())
}

/// `θ0 + 2 d_α σ/√n`.
pub fn matched_theta1(
    theta0: f64,
    sigma: f64,
    n: u64,
    alpha: Probability,
) -> Result<MatchedAlternative> {
    finite("theta0", theta0)?;
    finite("sigma", sigma)?;
    if sigma <= 0.0 {
        return Err(Error::NonPositiveSigma(sigma));
    }
    if n == 0 {
        return Err(Error::ZeroSampleSize);
    }
    let d = normal_kernel::critical(open_alpha(alpha)?);
    let theta1 = theta0 + 2.0 * d * sigma / (n as f64).sqrt();
    Ok(MatchedAlternative {
        theta1,
        degenerate: theta1 <= theta0,
    })
}

/// Level at which the setup's alternative is the matched one:
/// `1 - Φ(√n(θ1 - θ0)/(2σ))`. Identical to the Bayes effective level.
pub fn matched_alpha(setup: &TestSetup) -> Probability {
    Probability::clamped(effective_level(
        setup.theta0(),
        setup.theta1(),
        setup.sigma(),
        setup.n(),
    ))
}

pub fn analyze_duality(
    setup: &TestSetup,
    alpha: Probability,
    tolerance: f64,
) -> Result<DualityReport> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::InvalidTolerance(tolerance));
    }
    let t1 = np_reject_threshold(setup, alpha)?;
    let t2 = np_accept_h1_threshold(setup, alpha)?;
    let gap = t2 - t1;
    let classification = if gap.abs() <= tolerance {
        Classification::Equivalent
    } else if gap > 0.0 {
        Classification::AcceptImpliesRejectOnly
    } else {
        Classification::RejectImpliesAcceptOnly
    };
    Ok(DualityReport {
        classification,
        gap,
        t1,
        t2,
        tolerance,
    })
}
