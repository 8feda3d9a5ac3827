use thiserror::Error;

/// Errors raised by the graph and algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{location}: duplicate {kind} id `{id}`")]
    DuplicateId {
        location: String,
        kind: &'static str,
        id: String,
    },
    #[error("{location}: edge `{edge}` names unknown vertex `{vertex}`")]
    UnknownEndpoint {
        location: String,
        edge: String,
        vertex: String,
    },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("invalid structured document: {0}")]
    Document(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("graph fingerprint mismatch")]
    FingerprintMismatch,
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("cycle has an entry at vertex `{0}`")]
    CycleHasEntry(String),
    #[error("depth {depth} is smaller than the cycle length {len}")]
    DepthTooSmall { depth: usize, len: usize },
    #[error("sample degree {degree} exceeds the admissible bound {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("representation depth {have} is below the required {need}")]
    DepthMismatch { have: usize, need: usize },
    #[error("sample is not supported in the ideal of the cycle: {0}")]
    SampleOutsideIdeal(String),
    #[error("basis dimension {dim} exceeds the cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("assertion failed: {0}")]
    AssertionFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
