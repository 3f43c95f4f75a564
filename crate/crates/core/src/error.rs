use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{value} is not an exact power of {base}")]
    NotPowerOf { value: String, base: u64 },

    #[error("missing entry {0}")]
    MissingEntry(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed input: {0}")]
    Structural(String),

    #[error("interval too wide to decide: {0}")]
    Undecided(String),

    #[error("bound violated: {0}")]
    BoundViolation(String),

    /// A derivation or cross-check disagreed with itself. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for failures that indicate a defect in this crate rather than in
    /// the caller's input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::BoundViolation(_))
    }
}
