use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges or assignments")]
    EmptyInput,

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("unknown vertex label {label:?} on line {line}")]
    UnknownVertex { label: String, line: usize },

    #[error("vertex {label:?} assigned more than once (line {line})")]
    DuplicateVertex { label: String, line: usize },

    #[error("{} vertices missing from partition: {}", .labels.len(), .labels.join(", "))]
    MissingVertices { labels: Vec<String> },

    #[error("partition covers {partition} vertices but graph has {graph}")]
    SizeMismatch { partition: usize, graph: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph has no edges")]
    EdgelessGraph,

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("partition has a single community; at least two are required")]
    SingleCommunity,
}
