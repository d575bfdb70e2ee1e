use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid elimination tree: {0}")]
    InvalidTree(String),

    #[error("invalid path decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("minor found: {0}")]
    MinorFound(String),

    #[error("cap-limited: {0}")]
    CapLimited(String),

    #[error("search budget of {budget} states exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
