use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime {0} is out of range (must be below 2^61)")]
    PrimeOutOfRange(u64),

    #[error("quadratic forms over a field of characteristic 2 are not supported")]
    Characteristic2,

    #[error("value {0} has no image in the target field")]
    NotReducible(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point does not lie on the intersection: {0}")]
    NotOnLocus(String),

    #[error("point has all coordinates zero")]
    ZeroPoint,

    #[error("wrong point class: expected {expected}, found {found}")]
    WrongPointClass {
        expected: &'static str,
        found: &'static str,
    },

    #[error("invalid resolution graph: {}", .0.join("; "))]
    InvalidGraph(Vec<String>),

    #[error("invalid Noether-Fano instance: {}", .0.join("; "))]
    InvalidInstance(Vec<String>),

    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}
