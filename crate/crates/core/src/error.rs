use thiserror::Error;

/// Errors produced by graph construction, linkage and the moduli builders.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data does not describe a valid graph (bad ids, broken involution, ...).
    #[error("malformed graph: {0}")]
    Malformed(String),

    /// An operation was called outside its domain.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The exhaustive cycle search hit its node budget.
    #[error("cycle search exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),

    /// A step that the underlying construction guarantees to exist could not
    /// be carried out. Seeing this means a bug or a counterexample.
    #[error("internal consistency violation: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
