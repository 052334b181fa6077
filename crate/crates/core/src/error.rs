use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: cannot parse {token:?} as a number")]
    Parse { line: usize, token: String },

    #[error("line {line}: value {token:?} is not finite")]
    NonFiniteInput { line: usize, token: String },

    #[error("value at position {0} is not finite")]
    NonFinite(usize),

    #[error("input contains no values")]
    Empty,

    #[error("csv column {0:?} not found")]
    MissingColumn(String),

    #[error("line {line}: row has no field at column {column}")]
    ShortRow { line: usize, column: usize },

    #[error("positions {0} and {1} hold equal values; the relative order is undefined")]
    Tie(usize, usize),

    #[error("invalid rank pattern: {0}")]
    InvalidPattern(String),

    #[error("prefix reduces to {0} keypoint(s); at least 2 are required")]
    ShortPrefix(usize),

    #[error("split ratio {ratio} leaves an empty {side} half of a {len}-value series")]
    EmptySplit {
        ratio: f64,
        side: &'static str,
        len: usize,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors that mean a caller broke an API precondition rather
    /// than supplying bad data.
    pub fn is_contract(&self) -> bool {
        matches!(self, Error::Contract(_))
    }
}
