use thiserror::Error;

/// Errors raised by domain construction, parsing and the guarded scans.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty restriction set")]
    EmptyRestriction,
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("alternative {alternative} outside 1..={n}")]
    AlternativeOutOfRange { alternative: usize, n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{what} refused: n = {n} exceeds the limit {limit}")]
    TooLarge { what: &'static str, n: usize, limit: usize },
    #[error("bipartite is defined for peak-pit domains")]
    NotPeakPit,
    #[error("domain is not generated by the even scheme: {0}")]
    NotEvenScheme(String),
    #[error("invalid Dyck word: {0}")]
    InvalidDyckWord(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}
