use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("illegal character {found:?} at position {position}")]
    IllegalCharacter { position: usize, found: char },
    #[error("invalid run length encoding: {0}")]
    InvalidRle(String),
    #[error("sequence length {0} exceeds the supported maximum of {max}", max = crate::seqcore::MAX_LEN)]
    TooLong(usize),
    #[error("repetition factor must be at least 1")]
    ZeroRepetition,
    #[error("operation requires n >= {required}, got n = {n}")]
    TooShort { n: usize, required: usize },
    #[error("vector length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("reconstruction inconsistent: {0}")]
    Inconsistent(String),
    #[error("periodic run vector needs an even number of runs (first and last element differ), got gamma = {0}")]
    OddGamma(usize),
    #[error("constant sequence has no canonical periodic rotation")]
    ConstantSequence,
    #[error("lag {k} is not determined by a border of width {m}")]
    BeyondBorder { k: usize, m: usize },
    #[error("run-count parity is unknown")]
    UnknownParity,
    #[error("partial run information is invalid: {0}")]
    InvalidPartial(String),
    #[error("sequence is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("invalid search specification: {0}")]
    InvalidSearch(String),
    #[error("internal error: {0}")]
    Internal(String),
}
