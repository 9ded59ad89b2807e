use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Zero passed where a unit is required (inversion, leading coefficient).
    #[error("domain error: {0}")]
    Domain(String),
    /// Generators do not span a full-rank lattice.
    #[error("rank error: {0}")]
    Rank(String),
    /// Index vector does not match the rank or lattice count.
    #[error("index error: {0}")]
    Index(String),
    /// Input outside the hypothesis of an operation.
    #[error("range error: {0}")]
    Range(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// An internal invariant failed; always a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
