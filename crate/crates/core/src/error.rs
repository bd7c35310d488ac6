//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: shape mismatches, bad indices, schema violations.
    #[error("input error: {0}")]
    Input(String),

    /// Random sampling failed to produce a verified generic representation.
    #[error("genericity not attained: {0}")]
    Genericity(String),

    /// A window-relative search needs a larger window to succeed.
    #[error("window too small: {0}")]
    WindowTooSmall(String),

    /// The orbit model reached a state its axioms exclude.
    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),

    /// The requested object is beyond the configured materialization bounds.
    #[error("object too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
