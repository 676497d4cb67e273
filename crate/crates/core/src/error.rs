use thiserror::Error;

/// Errors raised by parsing, the algebraic operations and the oracle.
///
/// `Undefined` concatenations are values, not errors; see [`crate::grid::ConcatResult`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("format error: {0}")]
    Format(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("incomplete substitution: no image for {0}")]
    IncompleteSubstitution(String),

    #[error("morphism precondition violated: {0}")]
    MorphismPrecondition(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
