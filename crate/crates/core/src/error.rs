use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Rényi order must exceed 1, got {0}")]
    InvalidOrder(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("entropy powers must sum to 1, got {0}")]
    NotNormalized(f64),

    /// Every entropy power is zero, so the only valid lower bound is 0.
    #[error("all entropy powers are zero; the lower bound is trivially 0")]
    Degenerate,

    #[error("root solver did not converge after {iterations} iterations, last bracket [{lo}, {hi}]")]
    NonConvergence { iterations: usize, lo: f64, hi: f64 },

    #[error("q(x) is singular at x = {0}")]
    Pole(f64),

    #[error("eigenvalue routes disagree: dense {dense}, secular {secular}")]
    EigenMismatch { dense: f64, secular: f64 },

    #[error("grid spacing mismatch: {0} vs {1}")]
    SpacingMismatch(f64, f64),

    #[error("density has no mass")]
    ZeroDensity,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
