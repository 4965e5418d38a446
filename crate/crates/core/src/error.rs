//! Error type shared across the crate.
//!
//! Construction and I/O functions return `Result<T, Error>`; numerical
//! routines that cannot fail structurally (norms, residuals) return values
//! directly. Validation errors carry enough context to be actionable from
//! the command line.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Local dimension is too small to be meaningful.
    #[error("local dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    /// A matrix had the wrong shape for the requested operation.
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    /// A matrix expected to act on a bipartite space has a side that is not a perfect square.
    #[error("matrix side {0} is not a perfect square")]
    NotPerfectSquare(usize),

    /// An entry that must lie on the unit circle does not.
    #[error("entry {index} has modulus {modulus:.6e}, expected 1 within {tol:.1e}")]
    NotUnimodular {
        index: usize,
        modulus: f64,
        tol: f64,
    },

    /// A buffer length does not match the declared dimensions.
    #[error("length mismatch: expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// An index pair lies outside the declared range.
    #[error("index ({a},{b}) out of range for dimension {d}")]
    IndexOutOfRange { a: usize, b: usize, d: usize },

    /// A search or decomposition parameter is invalid.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
