use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("quadrature did not converge for index {index}: best relative error {achieved:e} > {requested:e}")]
    QuadratureFailed {
        index: usize,
        achieved: f64,
        requested: f64,
    },

    #[error(
        "tolerance {requested:e} unreachable within {budget} coefficients (achieved {achieved:e})"
    )]
    ToleranceUnreachable {
        requested: f64,
        achieved: f64,
        budget: usize,
    },

    #[error("grid mismatch: expected {expected} samples, got {got}")]
    GridMismatch { expected: usize, got: usize },

    #[error("operation not supported for this weight: {0}")]
    Unsupported(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidArgument {
        name,
        reason: reason.into(),
    }
}
