//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown catalog function `{0}`")]
    UnknownFunction(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The integration oracle ran out of its node budget. Carries the partial
    /// result so callers can still inspect it.
    #[error("oracle did not converge: error estimate {error_estimate:e} after {evaluations} evaluations (partial value {value})")]
    OracleFailure {
        value: f64,
        error_estimate: f64,
        evaluations: u64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("consistency failure: {0}")]
    Consistency(String),

    /// A convexity hypothesis failed on one cell of a composite rule.
    #[error("convexity hypothesis fails on cell {cell}: worst violation {violation:e}")]
    Hypothesis { cell: usize, violation: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
