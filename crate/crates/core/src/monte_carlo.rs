//! Seeded simulation of the decision rules' error rates.
//!
//! Random numbers come from ChaCha20 keyed by the 64-bit seed (little-endian
//! in the first 8 key bytes, remaining key bytes zero). Each replication
//! belongs to a lane of [`LANE_REPS`] consecutive replications, and each
//! (world, lane) pair reads its own ChaCha stream with id
//! `world << 32 | lane`. World 0 draws under θ0, world 1 under θ1. Because a
//! lane's draws depend only on (seed, world, lane), running lanes in parallel
//! yields exactly the sequential result.
//!
//! Standard normal variates use the inverse CDF: a 53-bit uniform on the open
//! interval `(0, 1)` pushed through the kernel's quantile.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::decision_rules::{bayes_threshold, np_reject_threshold, TestSetup};
use crate::error::{finite, Error, Result};
use crate::normal_kernel::{self, Probability};

pub const DEFAULT_REPS: u64 = 200_000;
pub const DEFAULT_SEED: u64 = 42;

/// Replications per lane.
pub const LANE_REPS: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum SamplingMode {
    /// One variate: `x̄ ~ N(θ, σ²/n)`.
    #[default]
    DirectMean,
    /// `n` variates from `N(θ, σ²)`, averaged.
    FullSample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub enum Execution {
    #[default]
    Sequential,
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimulationConfig {
    pub reps: u64,
    pub seed: u64,
    pub sampling_mode: SamplingMode,
    pub execution: Execution,
}

impl SimulationConfig {
    pub fn new(reps: u64, seed: u64) -> Result<Self> {
        if reps == 0 {
            return Err(Error::ZeroReplications);
        }
        Ok(SimulationConfig {
            reps,
            seed,
            sampling_mode: SamplingMode::default(),
            execution: Execution::default(),
        })
    }

    pub fn with_mode(mut self, mode: SamplingMode) -> Self {
        self.sampling_mode = mode;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            Err(Error::ZeroReplications)
        } else {
            Ok(())
        }
    }

    fn lanes(&self) -> u64 {
        self.reps.div_ceil(LANE_REPS)
    }

    fn lane_len(&self, lane: u64) -> u64 {
        (self.reps - lane * LANE_REPS).min(LANE_REPS)
    }
}

/// Which hypothesis the data are drawn under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum World {
    Null = 0,
    Alternative = 1,
}

/// Stream of standard normal variates from one ChaCha20 stream.
#[derive(Debug, Clone)]
pub struct NormalStream {
    rng: ChaCha20Rng,
}

impl NormalStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut rng = ChaCha20Rng::from_seed(key);
        rng.set_stream(stream);
        NormalStream { rng }
    }

    /// Uniform on `(0, 1)`; never returns either endpoint.
    pub fn next_open_uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_standard_normal(&mut self) -> f64 {
        normal_kernel::quantile(self.next_open_uniform())
    }
}

/// Draws one sample mean of size `setup.n()` from `N(theta, σ²)`.
pub fn draw_sample_mean(
    theta: f64,
    setup: &TestSetup,
    mode: SamplingMode,
    rng: &mut NormalStream,
) -> f64 {
    match mode {
        SamplingMode::DirectMean => theta + setup.standard_error() * rng.next_standard_normal(),
        SamplingMode::FullSample => {
            let n = setup.n();
            let total: f64 = (0..n).map(|_| rng.next_standard_normal()).sum();
            theta + setup.sigma() * (total / n as f64)
        }
    }
}

fn lane_stream(config: &SimulationConfig, world: World, lane: u64) -> NormalStream {
    NormalStream::new(config.seed, ((world as u64) << 32) | lane)
}

/// Number of draws in `world` for which `hit` holds.
fn count_world<F>(setup: &TestSetup, world: World, config: &SimulationConfig, hit: F) -> u64
where
    F: Fn(f64) -> bool + Sync,
{
    let theta = match world {
        World::Null => setup.theta0(),
        World::Alternative => setup.theta1(),
    };
    let lane = |k: u64| -> u64 {
        let mut rng = lane_stream(config, world, k);
        (0..config.lane_len(k))
            .filter(|_| hit(draw_sample_mean(theta, setup, config.sampling_mode, &mut rng)))
            .count() as u64
    };
    match config.execution {
        Execution::Sequential => (0..config.lanes()).map(lane).sum(),
        Execution::Parallel => (0..config.lanes()).into_par_iter().map(lane).sum(),
    }
}

/// All draws of `world`, in replication order.
fn draw_world(setup: &TestSetup, world: World, config: &SimulationConfig) -> Vec<f64> {
    let theta = match world {
        World::Null => setup.theta0(),
        World::Alternative => setup.theta1(),
    };
    let lane = |k: u64| -> Vec<f64> {
        let mut rng = lane_stream(config, world, k);
        (0..config.lane_len(k))
            .map(|_| draw_sample_mean(theta, setup, config.sampling_mode, &mut rng))
            .collect()
    };
    let lanes: Vec<Vec<f64>> = match config.execution {
        Execution::Sequential => (0..config.lanes()).map(lane).collect(),
        Execution::Parallel => (0..config.lanes()).into_par_iter().map(lane).collect(),
    };
    lanes.concat()
}

/// Simulated sample means under θ0 (first) and θ1 (second).
pub fn simulate_sample_means(
    setup: &TestSetup,
    config: &SimulationConfig,
) -> Result<(Vec<f64>, Vec<f64>)> {
    config.validate()?;
    Ok((
        draw_world(setup, World::Null, config),
        draw_world(setup, World::Alternative, config),
    ))
}

/// Rule whose error rates are simulated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SimulatedRule {
    NeymanPearson(Probability),
    Bayes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RuleKind {
    NeymanPearson,
    Bayes,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalReport {
    pub rule: RuleKind,
    /// Only set for the Neyman-Pearson rule.
    pub alpha: Option<f64>,
    pub threshold: f64,
    pub type1_rate: f64,
    pub type2_rate: f64,
    pub type1_stderr: f64,
    pub type2_stderr: f64,
    pub reps: u64,
    pub seed: u64,
    pub sampling_mode: SamplingMode,
}

/// Binomial standard error of a proportion.
pub fn binomial_stderr(rate: f64, reps: u64) -> f64 {
    (rate * (1.0 - rate) / reps as f64).sqrt()
}

/// Simulates the type I error rate (rejections under θ0) and the type II
/// error rate (acceptances of H0 under θ1) of a rule.
pub fn estimate_error_rates(
    setup: &TestSetup,
    rule: SimulatedRule,
    config: &SimulationConfig,
) -> Result<EmpiricalReport> {
    config.validate()?;
    let (kind, alpha, threshold) = match rule {
        SimulatedRule::NeymanPearson(alpha) => (
            RuleKind::NeymanPearson,
            Some(alpha.value()),
            np_reject_threshold(setup, alpha)?,
        ),
        SimulatedRule::Bayes => (RuleKind::Bayes, None, bayes_threshold(setup)),
    };
    let rejections = count_world(setup, World::Null, config, |x| x >= threshold);
    let acceptances = count_world(setup, World::Alternative, config, |x| x < threshold);
    let reps = config.reps;
    let type1_rate = rejections as f64 / reps as f64;
    let type2_rate = acceptances as f64 / reps as f64;
    Ok(EmpiricalReport {
        rule: kind,
        alpha,
        threshold,
        type1_rate,
        type2_rate,
        type1_stderr: binomial_stderr(type1_rate, reps),
        type2_stderr: binomial_stderr(type2_rate, reps),
        reps,
        seed: config.seed,
        sampling_mode: config.sampling_mode,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiskPoint {
    pub threshold: f64,
    pub risk: f64,
}

/// Empirical average error of the cutoff rule `x̄ ≥ c` for each `c`, with
/// prior ½ on each hypothesis. All thresholds are scored on the same draws.
pub fn empirical_bayes_risk_scan(
    setup: &TestSetup,
    thresholds: &[f64],
    config: &SimulationConfig,
) -> Result<Vec<RiskPoint>> {
    if thresholds.is_empty() {
        return Err(Error::EmptyThresholds);
    }
    for &c in thresholds {
        finite("threshold", c)?;
    }
    let (mut null_draws, mut alt_draws) = simulate_sample_means(setup, config)?;
    null_draws.sort_by(f64::total_cmp);
    alt_draws.sort_by(f64::total_cmp);
    let reps = config.reps as f64;
    Ok(thresholds
        .iter()
        .map(|&c| {
            let below_null = null_draws.partition_point(|&x| x < c);
            let rejections = null_draws.len() - below_null;
            let acceptances = alt_draws.partition_point(|&x| x < c);
            RiskPoint {
                threshold: c,
                risk: 0.5 * (rejections as f64 / reps) + 0.5 * (acceptances as f64 / reps),
            }
        })
        .collect())
}
