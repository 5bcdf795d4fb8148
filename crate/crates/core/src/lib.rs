//! Tests of a normal mean with known variance: the most powerful
//! (Neyman-Pearson) test, the relation between rejecting H0 and accepting H1,
//! and the Bayes test under 0-1 loss with equal priors together with the
//! significance level it implies.

pub mod cli;
pub mod decision_rules;
pub mod duality;
pub mod error;
pub mod monte_carlo;
pub mod normal_kernel;

pub use decision_rules::{
    bayes_decide, bayes_effective_level, bayes_risk, bayes_threshold, cutoff_error_rates,
    np_accept_h1_threshold, np_decide, np_reject_threshold, power, Decision, NpForm, Outcome,
    Rule, SampleSummary, TestSetup,
};
pub use duality::{
    analyze_duality, consistency_gap, matched_alpha, matched_theta1, Classification,
    DualityReport, MatchedAlternative, DEFAULT_TOLERANCE,
};
pub use error::{Error, Result};
pub use monte_carlo::{
    draw_sample_mean, empirical_bayes_risk_scan, estimate_error_rates, EmpiricalReport,
    Execution, NormalStream, RiskPoint, SamplingMode, SimulatedRule, SimulationConfig,
};
pub use normal_kernel::{
    critical_value, std_normal_cdf, std_normal_pdf, std_normal_quantile, std_normal_sf,
    Probability, ZScore,
};
