use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("node {node} is out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("terminal sets must be nonempty")]
    EmptyTerminals,

    #[error("node {0} is both a source and a target")]
    OverlappingTerminals(usize),

    #[error("no augmenting path exists")]
    NoAugmentingPath,

    #[error("an augmenting path still exists")]
    AugmentingPathExists,

    #[error("the cut is empty")]
    EmptyCut,

    #[error("graph is empty")]
    EmptyGraph,

    #[error("value out of domain: {0}")]
    Domain(String),

    #[error("order is not a permutation: {0}")]
    NotAPermutation(String),

    #[error("graph is not a forest")]
    NotAForest,

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
