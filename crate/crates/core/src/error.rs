use thiserror::Error;

/// Errors raised while reading MPS input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MpsError {
    #[error("line {line}: malformed section header `{header}`")]
    BadSection { line: usize, header: String },
    #[error("line {line}: unsupported feature: {feature}")]
    Unsupported { line: usize, feature: String },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: duplicate coefficient for row `{row}`, column `{column}`")]
    DuplicateEntry { line: usize, row: String, column: String },
    #[error("line {line}: unknown row `{name}`")]
    UnknownRow { line: usize, name: String },
    #[error("line {line}: unknown column `{name}`")]
    UnknownColumn { line: usize, name: String },
    #[error("line {line}: invalid number `{text}`")]
    BadNumber { line: usize, text: String },
    #[error("no objective (N) row")]
    NoObjective,
    #[error("name `{0}` cannot be written in free MPS format")]
    UnwritableName(String),
}

/// Everything else in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Mps(#[from] MpsError),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    #[error("invalid class id {0}")]
    InvalidClass(usize),
    #[error("assignment length {got} does not match registry size {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("registry size {size} exceeds enumeration limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("search space of {size} permutation pairs exceeds limit {limit}")]
    SearchSpace { size: u128, limit: u128 },
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bad .qubo input at line {line}: {message}")]
    QuboFormat { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
