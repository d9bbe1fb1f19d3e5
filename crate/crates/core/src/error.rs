use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid move site: {0}")]
    InvalidSite(String),

    #[error("slope 0/0 is undefined")]
    ZeroSlope,

    #[error("generator index {index} out of range 1..={count}")]
    GeneratorOutOfRange { index: usize, count: usize },

    #[error("cannot drop a relator from an empty relator list")]
    NoRelators,

    #[error("exponent {0} must be at least 2")]
    ExponentTooSmall(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("unknown pc presentation `{0}`")]
    UnknownPcp(String),

    #[error("pc presentation is inconsistent: {0}")]
    Inconsistent(String),

    #[error("generator {0} has no assignment")]
    Unassigned(usize),

    #[error("left-normed commutator needs at least two entries")]
    CommutatorTooShort,

    #[error("engine too small: {0}")]
    EngineTooSmall(String),

    #[error("class bound {class} must be below the prime {prime}")]
    ClassTooLarge { class: usize, prime: u32 },

    #[error("Lie elements over different bases")]
    BasisMismatch,

    #[error("{0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
