use thiserror::Error;

/// Errors raised by the engine. Every variant reports a caller mistake; the
/// arithmetic itself is exact and cannot fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the range the operation accepts.
    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// A constraint tuple does not satisfy the dimension balance the formula
    /// was derived under.
    #[error("dimension balance violated: {required}, got {actual}")]
    Balance { required: String, actual: String },

    /// A separation filter names a constraint that is not in the tuple.
    #[error("filter references constraint #{index}, but the tuple has {len} elements")]
    FilterAbsent { index: usize, len: usize },

    /// A normalized count came out fractional or negative.
    #[error("{what}: raw value {raw} does not give a non-negative integer count after dividing by {divisor}")]
    NotACount {
        what: String,
        raw: String,
        divisor: u32,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range(msg: impl Into<String>) -> Error {
    Error::OutOfRange(msg.into())
}
