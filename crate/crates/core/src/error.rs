use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant except the last three is a domain error: an input that lies
/// outside the mathematical domain of an operation. The remaining variants are
/// contract errors between cooperating values.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("probability must lie in [0, 1], got {0}")]
    ProbabilityOutOfRange(f64),

    #[error("{name} must lie strictly inside (0, 1), got {value}")]
    OpenUnitInterval { name: &'static str, value: f64 },

    #[error("sigma must be positive, got {0}")]
    NonPositiveSigma(f64),

    #[error("sample size must be at least 1")]
    ZeroSampleSize,

    #[error("alternative mean theta1 = {theta1} must exceed null mean theta0 = {theta0}")]
    UnorderedHypotheses { theta0: f64, theta1: f64 },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("sample size {sample} does not match setup sample size {setup}")]
    SampleSizeMismatch { sample: u64, setup: u64 },

    #[error("replication count must be at least 1")]
    ZeroReplications,

    #[error("threshold list is empty")]
    EmptyThresholds,
}

impl Error {
    /// True for errors that signal a broken contract between values rather
    /// than an out-of-domain input.
    pub fn is_contract(&self) -> bool {
        matches!(
            self,
            Error::SampleSizeMismatch { .. } | Error::ZeroReplications | Error::EmptyThresholds
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
