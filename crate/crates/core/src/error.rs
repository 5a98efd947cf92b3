use thiserror::Error;

/// Errors raised by the library. Every variant is an input or configuration
/// problem; none of them indicate a broken internal invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop {node}-{node} (simple graphs only)")]
    SelfLoop { line: usize, node: usize },

    #[error("node index {index} out of range for graph with {n} nodes")]
    NodeOutOfRange { index: usize, n: usize },

    #[error("not a clique: nodes {0} and {1} are not adjacent")]
    NotAClique(usize, usize),

    #[error("vertex subset must be strictly increasing and duplicate-free")]
    UnsortedSubset,

    #[error("{what} refuses n = {n} (limit {limit}){hint}")]
    Guard {
        what: &'static str,
        n: usize,
        limit: usize,
        hint: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
