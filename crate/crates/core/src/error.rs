use thiserror::Error;

/// Errors raised by the numerical and I/O layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderOutOfRange { order: i64, max: i64 },

    #[error("argument {arg} outside the validated range [0, {max}]")]
    ArgumentOutOfRange { arg: f64, max: f64 },

    #[error("singular evaluation: {0}")]
    Singularity(String),

    #[error("Graf branch is ambiguous: |x| = {x_norm} and |y| = {y_norm} coincide")]
    BranchAmbiguity { x_norm: f64, y_norm: f64 },

    #[error("overflow evaluating {what}")]
    Overflow { what: String },

    #[error("invalid source configuration: {0}")]
    Configuration(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("point outside the domain of validity: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms (tail estimate {tail:e})")]
    Truncation { terms: usize, tail: f64 },

    #[error("quadrature did not converge: estimated error {estimate:e} after {panels} panels")]
    Quadrature { estimate: f64, panels: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of an iterative or series computation to reach its tolerance.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(self, Error::Truncation { .. } | Error::Quadrature { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
