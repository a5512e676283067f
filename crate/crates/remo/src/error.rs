//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix or subsystem dimensions are inconsistent.
    #[error("dimension error: {0}")]
    Dim(String),

    /// A matrix expected to be Hermitian deviates beyond tolerance.
    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// The Jacobi eigensolver failed to converge within the sweep budget.
    #[error("eigensolver did not converge within {max_sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { max_sweeps: usize, off_norm: f64 },

    /// An argument is outside its valid range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A state document could not be parsed.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A parsed matrix violates a density-matrix invariant.
    #[error("state validation failed: {0}")]
    Validation(String),

    /// A margin function has no (or more than one) sign change on the scanned interval.
    #[error("no usable sign change: {0}")]
    NoSignChange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
