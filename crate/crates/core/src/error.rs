use thiserror::Error;

use crate::digraph::Arc;

/// Violations of the oriented-graph invariants and invalid structural queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop arc {0}")]
    LoopArc(Arc),
    #[error("symmetric pair: both {0} and its reverse are present")]
    SymmetricPair(Arc),
    #[error("duplicate arc {0}")]
    DuplicateArc(Arc),
    #[error("arc {arc} has an endpoint outside 0..{n}")]
    VertexOutOfRange { arc: Arc, n: usize },
    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("vertex {vertex} is not in 0..{n}")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("arc {0} is not an arc of the digraph")]
    UnknownArc(Arc),
}

/// Errors from the cycle, connectivity and family computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("the digraph is acyclic")]
    AcyclicDigraph,
    #[error("the digraph is not strongly connected")]
    NotStrong,
    #[error("arc-connectivity needs at least 2 vertices")]
    TooFewVertices,
    #[error("{0} is not a girth cycle of the digraph")]
    NotAGirthCycle(String),
    #[error("{0} is not a 4-cycle of the digraph")]
    NotAFourCycle(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("exact computation is limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

/// Errors from the sweep engine.
#[derive(Debug, Error)]
pub enum SweepError {
    #[error("exhaustive enumeration at n={n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid sweep specification: {0}")]
    InvalidSpec(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors from parsing the edge-list and digraph6 formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    SyntaxLine { line: usize, message: String },
    #[error("byte {byte}: {message}")]
    SyntaxByte { byte: usize, message: String },
    #[error("invariant violation: {0}")]
    InvariantViolation(GraphError),
}
