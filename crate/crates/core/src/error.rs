use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("qubit count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("{n} qubits exceed the supported maximum of {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("graph mismatch: {0}")]
    GraphMismatch(String),
    #[error("unsupported graph: {0}")]
    UnsupportedGraph(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certificate rejected: {0}")]
    Certificate(String),
    #[error("linear program: {0}")]
    Lp(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
