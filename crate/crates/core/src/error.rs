use thiserror::Error;

/// Errors raised by the code constructions, decoders and simulation harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range for length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("invalid bit string: {0}")]
    InvalidBitString(String),

    #[error("code too large: {0}")]
    TooLarge(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("zero-set is not closed under doubling: {0}")]
    NotClosed(String),

    #[error("received word is inconsistent with every codeword")]
    Inconsistent,
}

pub type Result<T> = std::result::Result<T, Error>;
