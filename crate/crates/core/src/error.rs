use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix order {0} is out of range (expected 1..=8)")]
    OrderOutOfRange(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} is out of range for order {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("transvection indices must differ (got {0},{0})")]
    DegenerateTransvection(usize),

    #[error("matrix is singular over F2")]
    Singular,

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// The queried element lies beyond the explored horizon of a result.
    #[error("beyond explored horizon (explored depth {depth})")]
    BeyondHorizon { depth: usize },

    /// An operation needs a fully explored group.
    #[error("exploration is incomplete")]
    Incomplete,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Signals a bug in canonicalization or classification, never bad input.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("database format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
