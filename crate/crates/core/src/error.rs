use thiserror::Error;

/// What went wrong with a single token of a permutation or cycle text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("token {position}: '{token}' is not a positive integer")]
    NotAnInteger { position: usize, token: String },
    #[error("token {position}: value {value} appears more than once")]
    Duplicate { position: usize, value: u64 },
    #[error("token {position}: value {value} is outside 1..{size}")]
    OutOfRange { position: usize, value: u64, size: usize },
    #[error("compact digit form only allowed for at most 9 letters (got {len}); use separators")]
    CompactTooLong { len: usize },
    #[error("malformed cycle notation at character {position}: {reason}")]
    CycleSyntax { position: usize, reason: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("block length b must be at least 1")]
    InvalidBlockLength,
    #[error("length must be at least 1")]
    InvalidLength,
    #[error("position {position} is outside 1..{size}")]
    PositionOutOfRange { position: usize, size: usize },
    #[error("length {length} exceeds the exhaustive limit {cap}")]
    Infeasible { length: usize, cap: usize },
    #[error("count does not fit in the chosen integer type")]
    Overflow,
    #[error("seating trace is jammed, not a full occupancy")]
    TraceNotFull,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
