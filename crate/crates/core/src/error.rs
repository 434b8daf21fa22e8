use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph order {order} exceeds the supported maximum of {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("adjacency is not symmetric at {0}-{1}")]
    AsymmetricAdjacency(Vertex, Vertex),
    #[error("connectivity check limited to k <= {max}, got {k}")]
    ConnectivityCap { k: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("prescription covers {prescribed} vertices but the graph has {order}")]
    PrescriptionOrder { prescribed: usize, order: usize },
    #[error("prescription is not allowed at vertex {0}")]
    NotAllowed(Vertex),
    #[error(transparent)]
    Budget(#[from] BudgetError),
    #[error("precondition not met: {0}")]
    Precondition(String),
    /// A proven statement failed on a concrete instance.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

/// Search limits exceeded.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BudgetError {
    #[error("{edges} edges exceed the enumeration cap of {cap}")]
    TooManyEdges { edges: usize, cap: usize },
    #[error("{vertices} vertices exceed the cap of {cap}")]
    TooManyVertices { vertices: usize, cap: usize },
    #[error("time limit of {millis} ms exceeded (best deviation found: {})", best_bound.map_or("none".to_string(), |b| b.to_string()))]
    Timeout { millis: u64, best_bound: Option<u32> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("graph6: {reason} at byte offset {offset}")]
    Graph6 { offset: usize, reason: String },
    #[error("edge list line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("prescription literal {literal:?}: {reason}")]
    Prescription { literal: String, reason: String },
}
