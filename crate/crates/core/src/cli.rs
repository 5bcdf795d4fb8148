//! Command-line surface.
//!
//! Every command prints one envelope on stdout:
//! `{"command", "inputs", "results", "version"}`. `inputs` echoes every
//! parameter including defaulted ones, so a run can be reproduced from its
//! own output. Table-shaped results (`power-curve`, the risk scan of
//! `simulate`) can be printed as CSV with `--format csv`.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 domain error.
//!
//! `--alpha` is a probability in (0, 1): 0.05 means a 5% level.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::decision_rules::{
    bayes_decide, bayes_effective_level, bayes_threshold, np_decide, power, NpForm,
    SampleSummary, TestSetup,
};
use crate::duality::{analyze_duality, matched_alpha, matched_theta1, DEFAULT_TOLERANCE};
use crate::error::Error;
use crate::monte_carlo::{
    empirical_bayes_risk_scan, estimate_error_rates, Execution, SamplingMode, SimulatedRule,
    SimulationConfig, DEFAULT_REPS, DEFAULT_SEED,
};
use crate::normal_kernel::Probability;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "np-bayes",
    version,
    about = "Neyman-Pearson and Bayes tests for a normal mean with known variance"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the three decision rules to one observed sample mean.
    Decide(DecideArgs),
    /// Report which of "reject H0" and "accept H1" implies the other.
    Duality(DualityArgs),
    /// Estimate a rule's error rates by simulation.
    Simulate(SimulateArgs),
    /// Tabulate the rejection probability of the level-alpha test over a grid of means.
    PowerCurve(PowerCurveArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SetupArgs {
    /// Null mean.
    #[arg(long, allow_hyphen_values = true)]
    pub theta0: f64,
    /// Alternative mean, must exceed theta0.
    #[arg(long, allow_hyphen_values = true)]
    pub theta1: f64,
    /// Known standard deviation.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: f64,
    /// Sample size.
    #[arg(long)]
    pub n: u64,
}

impl SetupArgs {
    fn build(&self) -> Result<TestSetup, Error> {
        TestSetup::new(self.theta0, self.theta1, self.sigma, self.n)
    }

    fn echo(&self) -> Value {
        json!({
            "theta0": self.theta0,
            "theta1": self.theta1,
            "sigma": self.sigma,
            "n": self.n,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleArg {
    Np,
    Bayes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Direct,
    Full,
}

impl From<ModeArg> for SamplingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Direct => SamplingMode::DirectMean,
            ModeArg::Full => SamplingMode::FullSample,
        }
    }
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[command(flatten)]
    pub setup: SetupArgs,
    /// Significance level in (0, 1).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Observed sample mean.
    #[arg(long, allow_hyphen_values = true)]
    pub xbar: f64,
    /// Absolute tolerance on the duality gap.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_hyphen_values = true)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DualityArgs {
    #[command(flatten)]
    pub setup: SetupArgs,
    /// Significance level in (0, 1).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Absolute tolerance on the duality gap.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_hyphen_values = true)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub setup: SetupArgs,
    #[arg(long, value_enum)]
    pub rule: RuleArg,
    /// Significance level in (0, 1); required for the np rule.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_REPS, value_parser = clap::value_parser!(u64).range(1..))]
    pub reps: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Direct)]
    pub mode: ModeArg,
    /// Comma-separated cutoffs for an empirical Bayes-risk scan.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub scan_thresholds: Option<Vec<f64>>,
    /// Run replication lanes on a thread pool. Results are identical.
    #[arg(long)]
    pub parallel: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PowerCurveArgs {
    #[command(flatten)]
    pub setup: SetupArgs,
    /// Significance level in (0, 1).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub version: String,
}

impl OutputEnvelope {
    fn new(command: &str, inputs: Value, results: Value) -> Self {
        OutputEnvelope {
            command: command.to_string(),
            inputs,
            results,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// A command's envelope plus, for table-shaped commands, its table.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub envelope: OutputEnvelope,
    pub table: Option<Table>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl CommandOutput {
    /// Serialises in the requested format.
    pub fn render(&self) -> Result<String, CliError> {
        match self.format {
            Format::Json => serde_json::to_string_pretty(&self.envelope)
                .map_err(|e| CliError::Domain(e.to_string())),
            Format::Csv => {
                let table = self.table.as_ref().ok_or_else(|| {
                    CliError::Usage(format!(
                        "--format csv is not available for `{}` without a table",
                        self.envelope.command
                    ))
                })?;
                table_to_csv(table)
            }
        }
    }
}

fn table_to_csv(table: &Table) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Domain(e.to_string());
    w.write_record(&table.header).map_err(io)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|v| v.to_string())).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let mut text = String::from_utf8(bytes).map_err(|e| CliError::Domain(e.to_string()))?;
    text.truncate(text.trim_end().len());
    Ok(text)
}

fn alpha_of(value: f64) -> Result<Probability, Error> {
    Probability::new_open("alpha", value)
}

pub fn run(cli: &Cli) -> Result<CommandOutput, CliError> {
    match &cli.command {
        Command::Decide(a) => cmd_decide(a),
        Command::Duality(a) => cmd_duality(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::PowerCurve(a) => cmd_power_curve(a),
    }
}

pub fn cmd_decide(args: &DecideArgs) -> Result<CommandOutput, CliError> {
    let setup = args.setup.build()?;
    let alpha = alpha_of(args.alpha)?;
    let sample = SampleSummary::new(args.xbar, setup.n())?;

    let np = np_decide(&sample, &setup, alpha, NpForm::RejectH0Form)?;
    let np_h1 = np_decide(&sample, &setup, alpha, NpForm::AcceptH1Form)?;
    let bayes = bayes_decide(&sample, &setup)?;
    let report = analyze_duality(&setup, alpha, args.tolerance)?;

    let mut inputs = args.setup.echo();
    inputs["alpha"] = json!(args.alpha);
    inputs["xbar"] = json!(args.xbar);
    inputs["tolerance"] = json!(args.tolerance);
    inputs["format"] = json!(args.format);

    let results = json!({
        "thresholds": {
            "np_reject_h0": np.threshold,
            "np_accept_h1": np_h1.threshold,
            "bayes": bayes.threshold,
        },
        "decisions": {
            "np_reject_h0_form": np,
            "np_accept_h1_form": np_h1,
            "bayes": bayes,
        },
        "duality": report,
        "bayes_effective_level": bayes_effective_level(&setup),
    });
    Ok(CommandOutput {
        envelope: OutputEnvelope::new("decide", inputs, results),
        table: None,
        format: args.format,
    })
}

pub fn cmd_duality(args: &DualityArgs) -> Result<CommandOutput, CliError> {
    let setup = args.setup.build()?;
    let alpha = alpha_of(args.alpha)?;
    let report = analyze_duality(&setup, alpha, args.tolerance)?;
    let matched = matched_theta1(setup.theta0(), setup.sigma(), setup.n(), alpha)?;

    let mut inputs = args.setup.echo();
    inputs["alpha"] = json!(args.alpha);
    inputs["tolerance"] = json!(args.tolerance);
    inputs["format"] = json!(args.format);

    let results = json!({
        "report": report,
        "matched_theta1": matched,
        "matched_alpha": matched_alpha(&setup),
    });
    Ok(CommandOutput {
        envelope: OutputEnvelope::new("duality", inputs, results),
        table: None,
        format: args.format,
    })
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<CommandOutput, CliError> {
    let rule = match (args.rule, args.alpha) {
        (RuleArg::Np, None) => {
            return Err(CliError::Usage("--alpha is required for --rule np".into()))
        }
        (RuleArg::Np, Some(a)) => Some(alpha_of(a)?),
        (RuleArg::Bayes, _) => None,
    };
    if args.format == Format::Csv && args.scan_thresholds.is_none() {
        return Err(CliError::Usage(
            "--format csv for simulate requires --scan-thresholds".into(),
        ));
    }
    let setup = args.setup.build()?;
    let execution = if args.parallel {
        Execution::Parallel
    } else {
        Execution::Sequential
    };
    let config = SimulationConfig::new(args.reps, args.seed)?
        .with_mode(args.mode.into())
        .with_execution(execution);

    let (simulated, analytic) = match rule {
        Some(alpha) => (
            SimulatedRule::NeymanPearson(alpha),
            json!({
                "type1_rate": alpha.value(),
                "type2_rate": 1.0 - power(&setup, alpha, setup.theta1())?.value(),
            }),
        ),
        None => {
            let level = bayes_effective_level(&setup).value();
            (
                SimulatedRule::Bayes,
                json!({ "type1_rate": level, "type2_rate": level }),
            )
        }
    };
    let report = estimate_error_rates(&setup, simulated, &config)?;

    let scan = match &args.scan_thresholds {
        Some(cs) => Some(empirical_bayes_risk_scan(&setup, cs, &config)?),
        None => None,
    };

    let mut inputs = args.setup.echo();
    inputs["rule"] = json!(args.rule);
    inputs["alpha"] = json!(args.alpha);
    inputs["reps"] = json!(args.reps);
    inputs["seed"] = json!(args.seed);
    inputs["mode"] = json!(args.mode);
    inputs["scan_thresholds"] = json!(args.scan_thresholds);
    inputs["parallel"] = json!(args.parallel);
    inputs["format"] = json!(args.format);

    let mut results = json!({
        "report": report,
        "analytic": analytic,
        "bayes_threshold": bayes_threshold(&setup),
    });
    let table = scan.as_ref().map(|pts| Table {
        header: vec!["threshold", "risk"],
        rows: pts.iter().map(|p| vec![p.threshold, p.risk]).collect(),
    });
    if let Some(pts) = scan {
        results["risk_scan"] = json!(pts);
    }
    Ok(CommandOutput {
        envelope: OutputEnvelope::new("simulate", inputs, results),
        table,
        format: args.format,
    })
}

/// `steps` evenly spaced points from `min` to `max`, both included.
pub fn theta_grid(min: f64, max: f64, steps: u64) -> Result<Vec<f64>, CliError> {
    if !(min.is_finite() && max.is_finite()) {
        return Err(CliError::Domain("theta grid bounds must be finite".into()));
    }
    if max < min {
        return Err(CliError::Domain(format!(
            "theta-max {max} is below theta-min {min}"
        )));
    }
    if steps == 1 {
        if min != max {
            return Err(CliError::Domain(
                "a single-step grid needs theta-min equal to theta-max".into(),
            ));
        }
        return Ok(vec![min]);
    }
    let width = (max - min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                max
            } else {
                min + i as f64 * width
            }
        })
        .collect())
}

pub fn cmd_power_curve(args: &PowerCurveArgs) -> Result<CommandOutput, CliError> {
    let setup = args.setup.build()?;
    let alpha = alpha_of(args.alpha)?;
    let grid = theta_grid(args.theta_min, args.theta_max, args.steps)?;
    let rows = grid
        .iter()
        .map(|&theta| Ok((theta, power(&setup, alpha, theta)?.value())))
        .collect::<Result<Vec<_>, Error>>()?;

    let mut inputs = args.setup.echo();
    inputs["alpha"] = json!(args.alpha);
    inputs["theta_min"] = json!(args.theta_min);
    inputs["theta_max"] = json!(args.theta_max);
    inputs["steps"] = json!(args.steps);
    inputs["format"] = json!(args.format);

    let results = json!({
        "rows": rows
            .iter()
            .map(|&(theta, p)| json!({ "theta": theta, "power": p }))
            .collect::<Vec<_>>(),
    });
    Ok(CommandOutput {
        envelope: OutputEnvelope::new("power-curve", inputs, results),
        table: Some(Table {
            header: vec!["theta", "power"],
            rows: rows.iter().map(|&(t, p)| vec![t, p]).collect(),
        }),
        format: args.format,
    })
}
