//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Quantile requested at p = 0 or p = 1, where it is unbounded.
    #[error("quantile is infinite at p = {0}")]
    InfiniteQuantile(f64),

    /// An iterative numerical routine failed to converge.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// The Gaussian CDF of the scaled driver rounds to 0 or 1 in double
    /// precision, so the transformed value is not representable.
    #[error("tail saturation: |b/sqrt(t)| = {0} exceeds the representable range")]
    TailSaturation(f64),

    /// Density derivative requested at a kink of a piecewise density.
    #[error("density is not differentiable at x = {0}")]
    NonDifferentiable(f64),

    /// Shape parameters give an infinite-variance law, which cannot be
    /// standardized.
    #[error("infinite variance: {0}")]
    InfiniteVariance(String),

    /// An estimator was handed fewer samples than it needs.
    #[error("insufficient data: need at least {need} samples, got {got}")]
    InsufficientData { need: usize, got: usize },

    /// A simulated state became non-finite (coefficient blow-up).
    #[error("path aborted at step {step}: state became non-finite")]
    PathAborted { step: usize },

    /// A configuration file or flag could not be interpreted.
    #[error("config error in field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit status for the CLI: 0 success, 1 check/numeric failure,
    /// 2 configuration error, 3 i/o error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } => 2,
            Error::Io(_) => 3,
            _ => 1,
        }
    }
}
