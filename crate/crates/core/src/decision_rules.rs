//! Decision rules for `H0: θ = θ0` against `H1: θ = θ1` (θ1 > θ0) when the
//! data are `N(θ, σ²)` with σ known and only the sample mean matters.
//!
//! Three cutoffs on the sample mean are provided:
//!
//! * the most powerful level-α test, rejecting H0 when `x̄ ≥ θ0 + d_α σ/√n`;
//! * the same test phrased as accepting H1, when `x̄ ≥ θ1 - d_α σ/√n`;
//! * the Bayes rule under 0-1 loss and equal priors, with cutoff `(θ0 + θ1)/2`.
//!
//! Every rule rejects on a tie (`x̄` exactly at the cutoff). For the Bayes rule
//! that event has probability zero under the model; rejecting keeps the
//! decision total and matches the `≥` of the Neyman-Pearson form.

use serde::Serialize;

use crate::error::{finite, Error, Result};
use crate::normal_kernel::{self, Probability};

/// Problem instance: null and alternative means, known σ and sample size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestSetup {
    theta0: f64,
    theta1: f64,
    sigma: f64,
    n: u64,
}

impl TestSetup {
    /// Builds a setup, enforcing `σ > 0`, `n ≥ 1` and `θ1 > θ0`.
    pub fn new(theta0: f64, theta1: f64, sigma: f64, n: u64) -> Result<Self> {
        finite("theta0", theta0)?;
        finite("theta1", theta1)?;
        finite("sigma", sigma)?;
        if sigma <= 0.0 {
            return Err(Error::NonPositiveSigma(sigma));
        }
        if n == 0 {
            return Err(Error::ZeroSampleSize);
        }
        if theta1 <= theta0 {
            return Err(Error::UnorderedHypotheses { theta0, theta1 });
        }
        Ok(TestSetup {
            theta0,
            theta1,
            sigma,
            n,
        })
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Standard deviation of the sample mean, `σ/√n`.
    pub fn standard_error(&self) -> f64 {
        self.sigma / (self.n as f64).sqrt()
    }

    /// Same σ and n with a different alternative mean.
    pub fn with_theta1(&self, theta1: f64) -> Result<Self> {
        TestSetup::new(self.theta0, theta1, self.sigma, self.n)
    }

    /// Standardises a distance on the sample-mean scale: `√n·delta/σ`.
    pub(crate) fn standardize(&self, delta: f64) -> f64 {
        (self.n as f64).sqrt() * delta / self.sigma
    }
}

/// Observed sample mean together with the size of the sample behind it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleSummary {
    pub xbar: f64,
    pub n: u64,
}

impl SampleSummary {
    pub fn new(xbar: f64, n: u64) -> Result<Self> {
        finite("xbar", xbar)?;
        if n == 0 {
            return Err(Error::ZeroSampleSize);
        }
        Ok(SampleSummary { xbar, n })
    }

    /// Summarises raw observations.
    pub fn from_observations(xs: &[f64]) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::ZeroSampleSize);
        }
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        SampleSummary::new(mean, xs.len() as u64)
    }

    fn check_against(&self, setup: &TestSetup) -> Result<()> {
        if self.n != setup.n {
            return Err(Error::SampleSizeMismatch {
                sample: self.n,
                setup: setup.n,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    RejectH0,
    AcceptH0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    NeymanPearson,
    #[serde(rename = "NPAcceptH1Form")]
    NpAcceptH1Form,
    Bayes,
}

/// Which cutoff the Neyman-Pearson test is phrased against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NpForm {
    /// Reject H0 when `x̄ ≥ θ0 + d_α σ/√n`.
    RejectH0Form,
    /// Accept H1 when `x̄ ≥ θ1 - d_α σ/√n`.
    AcceptH1Form,
}

/// Verdict of one rule on one sample mean.
///
/// `outcome` is `RejectH0` exactly when `x̄ ≥ threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decision {
    pub outcome: Outcome,
    pub threshold: f64,
    pub rule: Rule,
}

impl Decision {
    fn compare(xbar: f64, threshold: f64, rule: Rule) -> Self {
        let outcome = if xbar >= threshold {
            Outcome::RejectH0
        } else {
            Outcome::AcceptH0
        };
        Decision {
            outcome,
            threshold,
            rule,
        }
    }

    pub fn rejects_h0(&self) -> bool {
        self.outcome == Outcome::RejectH0
    }

    /// Rejecting H0 and accepting H1 are the same verdict for every rule here.
    pub fn accepts_h1(&self) -> bool {
        self.rejects_h0()
    }
}

pub(crate) fn open_alpha(alpha: Probability) -> Result<f64> {
    if alpha.is_open() {
        Ok(alpha.value())
    } else {
        Err(Error::OpenUnitInterval {
            name: "alpha",
            value: alpha.value(),
        })
    }
}

/// `θ0 + d_α σ/√n`.
pub fn np_reject_threshold(setup: &TestSetup, alpha: Probability) -> Result<f64> {
    let d = normal_kernel::critical(open_alpha(alpha)?);
    Ok(setup.theta0 + d * setup.standard_error())
}

/// `θ1 - d_α σ/√n`.
pub fn np_accept_h1_threshold(setup: &TestSetup, alpha: Probability) -> Result<f64> {
    let d = normal_kernel::critical(open_alpha(alpha)?);
    Ok(setup.theta1 - d * setup.standard_error())
}

pub fn np_decide(
    sample: &SampleSummary,
    setup: &TestSetup,
    alpha: Probability,
    form: NpForm,
) -> Result<Decision> {
    sample.check_against(setup)?;
    Ok(match form {
        NpForm::RejectH0Form => Decision::compare(
            sample.xbar,
            np_reject_threshold(setup, alpha)?,
            Rule::NeymanPearson,
        ),
        NpForm::AcceptH1Form => Decision::compare(
            sample.xbar,
            np_accept_h1_threshold(setup, alpha)?,
            Rule::NpAcceptH1Form,
        ),
    })
}

/// Probability that the level-α rejection rule rejects H0 when the true mean
/// is `theta`. This is the power function of the one-sided test of
/// `θ = θ0` against `θ > θ0`; at `theta = θ0` it equals α.
pub fn power(setup: &TestSetup, alpha: Probability, theta: f64) -> Result<Probability> {
    finite("theta", theta)?;
    let cutoff = np_reject_threshold(setup, alpha)?;
    Ok(Probability::clamped(normal_kernel::sf(
        setup.standardize(cutoff - theta),
    )))
}

/// Midpoint `(θ0 + θ1)/2`.
pub fn bayes_threshold(setup: &TestSetup) -> f64 {
    0.5 * (setup.theta0 + setup.theta1)
}

pub fn bayes_decide(sample: &SampleSummary, setup: &TestSetup) -> Result<Decision> {
    sample.check_against(setup)?;
    Ok(Decision::compare(
        sample.xbar,
        bayes_threshold(setup),
        Rule::Bayes,
    ))
}

/// Type I error rate of the Bayes midpoint rule, `1 - Φ(√n(θ1 - θ0)/(2σ))`.
pub fn bayes_effective_level(setup: &TestSetup) -> Probability {
    Probability::clamped(effective_level(
        setup.theta0,
        setup.theta1,
        setup.sigma,
        setup.n,
    ))
}

/// Unvalidated form; `theta1 = theta0` gives 0.5.
pub(crate) fn effective_level(theta0: f64, theta1: f64, sigma: f64, n: u64) -> f64 {
    normal_kernel::sf((n as f64).sqrt() * (theta1 - theta0) / (2.0 * sigma))
}

/// The two error probabilities of the cutoff rule `x̄ ≥ c`:
/// `(P_θ0[x̄ ≥ c], P_θ1[x̄ < c])`.
pub fn cutoff_error_rates(setup: &TestSetup, threshold: f64) -> Result<(f64, f64)> {
    finite("threshold", threshold)?;
    let type1 = normal_kernel::sf(setup.standardize(threshold - setup.theta0));
    let type2 = normal_kernel::cdf(setup.standardize(threshold - setup.theta1));
    Ok((type1, type2))
}

/// Average error probability of the cutoff rule `x̄ ≥ c` under 0-1 loss with
/// prior ½ on each hypothesis. Minimised at the midpoint.
pub fn bayes_risk(setup: &TestSetup, threshold: f64) -> Result<Probability> {
    let (type1, type2) = cutoff_error_rates(setup, threshold)?;
    Ok(Probability::clamped(0.5 * type1 + 0.5 * type2))
}
