//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("diagonal reduction not available: polynomial involves {0}")]
    ReductionUnavailable(String),

    #[error("evaluation path not available: {0}")]
    PathUnavailable(String),

    #[error("unsupported correction pair ({r},{s}): {hint}")]
    UnsupportedCorrection { r: u32, s: u32, hint: String },

    #[error("invalid correction pair ({r},{s}): s must satisfy 1 <= s <= r")]
    InvalidCorrection { r: u32, s: u32 },

    #[error("integrand returned NaN at {point:?}")]
    NanIntegrand { point: Vec<f64> },

    #[error("region acceptance rate below 1e-6 after {proposals} proposals; region may be empty")]
    RegionPossiblyEmpty { proposals: u64 },

    #[error("basis degenerate: Gram matrix of J is not positive definite")]
    DegenerateBasis,

    #[error("Jacobi eigensolver did not converge within {0} sweeps")]
    EigenNonConvergence(u32),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("inadmissible tuple: all residues covered at p = {0}")]
    InadmissibleTuple(u64),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
