use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("singular point: {0}")]
    SingularPoint(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("integrand singular at the origin with exponent {exponent} and no mitigation active")]
    SingularityUnhandled { exponent: f64 },

    #[error("integrand returned a non-finite value {value} at {point:?}")]
    NonFinite { value: f64, point: Vec<f64> },

    #[error("point {0:?} lies on more than one boundary face")]
    EdgePoint(Vec<f64>),

    #[error("point {0:?} is not on the domain boundary")]
    NotOnBoundary(Vec<f64>),

    #[error("u is not positive at {point:?} (u = {value})")]
    NonPositiveU { value: f64, point: Vec<f64> },

    #[error("invalid exponent p = {0}; p > 1 is required")]
    InvalidExponent(f64),

    #[error("invalid parameters for case '{case}': requires {hypothesis}")]
    InvalidParameters { case: String, hypothesis: String },

    #[error("denominator term is not positive ({0})")]
    DegenerateDenominator(f64),

    #[error("quadratic coefficient X must be positive, got {0}")]
    NonPositiveX(f64),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
