use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range caller input.
    #[error("invalid input: {0}")]
    Input(String),

    /// An invariant the construction guarantees did not hold. Indicates a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A plan (built or loaded) failed one of its structural or numerical checks.
    #[error("plan verification failed: {0}")]
    Verification(String),

    #[error("memory budget exceeded: need {needed} bytes, budget is {budget} bytes")]
    Budget { needed: u64, budget: u64 },

    /// Unparseable file contents (plan JSON, CSV).
    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
