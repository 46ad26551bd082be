//! Error type shared across the toolkit.

use thiserror::Error;

/// Errors produced by parsing, structural analysis, and numerics.
#[derive(Debug, Error)]
pub enum CrnError {
    /// Malformed model text; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally valid input that violates an operation's precondition.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A symbol (rate constant or kinetic order) required a numeric value
    /// but none was bound.
    #[error("unbound symbol `{0}`")]
    Unbound(String),

    /// The requested analysis is outside the supported fragment
    /// (e.g. degenerate kinetic regimes, concordance checks).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Numerical failure during floating-point work (positivity floor,
    /// step-size underflow, non-finite values).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, CrnError>;
