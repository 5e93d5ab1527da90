//! Crate-wide error type.

use thiserror::Error;

/// Result alias using [`Error`].
pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the numeric kernels.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Quadrature failed to meet the requested tolerance.
    #[error("quadrature did not converge within {levels} levels (best estimate {best}, last increment {increment})")]
    QuadratureDidNotConverge {
        best: f64,
        increment: f64,
        levels: u32,
    },

    /// The integrand produced a non-finite value at an interior point.
    #[error("integrand returned a non-finite value at theta = {theta}")]
    IntegrandNotFinite { theta: f64 },

    /// Forward differences beyond this depth lose too many bits to cancellation.
    #[error("difference depth {depth} exceeds cap {cap}; use the moment-integral entry form instead")]
    CancellationRisk { depth: usize, cap: usize },

    /// An infinite sum demonstrably diverges.
    #[error("divergent sum: {0}")]
    Divergent(String),

    /// The request is outside what the implementation can answer honestly.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Sequence support exceeds the truncation order.
    #[error("truncation error: {0}")]
    Truncation(String),

    /// A specification string could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
