use thiserror::Error;

/// Errors reported by the dynamics and the game solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("vector must have at least one entry")]
    EmptyVector,
    #[error("entries are not in non-decreasing order")]
    Unsorted,
    #[error("cannot parse entry {0:?} as an integer")]
    Parse(String),
    #[error("range {range} exceeds the modulus {ell}; settle the vector first")]
    NotAbsorbed { range: String, ell: u64 },
    #[error("no entry is a multiple of {0}")]
    NoMultiple(u64),
    #[error("column {column} out of bounds for a vector of length {len}")]
    ColumnOutOfBounds { column: usize, len: usize },
    #[error("finish count d={d} must satisfy 1 <= d <= {n}")]
    InvalidFinish { d: usize, n: usize },
    #[error("the sequence never brings {d} entries down to level {level}")]
    NeverFinishes { d: usize, level: String },
    #[error("window must cover at least {min} steps, got {window}")]
    WindowTooShort { window: u64, min: u64 },
    #[error("a game position needs at least 2 piles, got {0}")]
    TooFewPiles(usize),
    #[error("pile sizes must be non-negative")]
    NegativePile,
    #[error("position is terminal: no legal move")]
    Terminal,
    #[error("move would drive a pile negative")]
    IllegalMove,
    #[error("state budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("pile {0} is too large for exhaustive search")]
    PileTooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
