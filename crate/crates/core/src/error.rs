use thiserror::Error;

/// Errors shared by every operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A configured resource limit would be exceeded.
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Randomized routine gave up; carries a human-readable diagnostic.
    #[error("search exhausted: {0}")]
    Exhausted(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn budget(what: &'static str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::Budget {
            what,
            needed,
            limit,
        })
    } else {
        Ok(())
    }
}
