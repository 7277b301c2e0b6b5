use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid shape Gr({k},{n}): need 1 <= k < n")]
    InvalidShape { k: usize, n: usize },

    #[error("{what} = {value} out of range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("Gr({k},{n}) exceeds capacity n <= {max_n}")]
    Capacity { k: usize, n: usize, max_n: usize },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An internal cross-check disagreed. Indicates a bug or a false claim,
    /// never a user error.
    #[error("falsified: {0}")]
    Falsification(String),
}

impl Error {
    pub fn is_falsification(&self) -> bool {
        matches!(self, Error::Falsification(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
