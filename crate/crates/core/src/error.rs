use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid element for {ring}: {reason}")]
    InvalidElement { ring: String, reason: String },

    #[error("ring {0} is not finite")]
    Infinite(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{0} is not invertible")]
    NotInvertible(String),

    /// A coefficient fails to commute with the point of evaluation or a pseudoroot.
    #[error("hypothesis violated: coefficient {index} does not commute with {with}")]
    Hypothesis { index: usize, with: String },

    #[error("X - {0} is not a right factor (nonzero remainder)")]
    NotAFactor(String),

    /// Raised by checked postconditions that encode a theorem; firing means a bug or a false claim.
    #[error("postcondition failed: {0}")]
    Postcondition(String),

    #[error("task too large: estimated {estimate} nodes exceeds limit {limit}")]
    TooLarge { estimate: u128, limit: u128 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("json: {0}")]
    Json(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
