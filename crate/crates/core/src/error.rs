use thiserror::Error;

/// Errors produced by the library.
///
/// Variants are grouped by the exit-code class the CLI maps them to:
/// malformed or invalid structures, violated preconditions, parse failures
/// and exceeded search bounds.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
