use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller handed over data that violates a precondition.
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    /// A computed object failed one of its own postconditions.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("search refused: {reason} (estimated cost {estimate} candidates)")]
    Refused { reason: String, estimate: u128 },
    #[error("integer overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! input_err {
    ($($arg:tt)*) => { $crate::Error::Input(format!($($arg)*)) };
}

macro_rules! invariant_err {
    ($($arg:tt)*) => { $crate::Error::Invariant(format!($($arg)*)) };
}

pub(crate) use input_err;
pub(crate) use invariant_err;
