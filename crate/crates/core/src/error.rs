use thiserror::Error;

use crate::graph::{NodeId, PathViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("cost overflow")]
    CostOverflow,
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("edge ({tail}, {head}) has non-positive weight")]
    NonPositiveWeight { tail: NodeId, head: NodeId },
    #[error("node {node} out of range (graph has {node_count} nodes)")]
    NodeOutOfRange { node: u64, node_count: usize },
    #[error("edge ({tail}, {head}) is not in the graph")]
    MissingEdge { tail: NodeId, head: NodeId },
    #[error("cannot concatenate: first path ends at {left}, second starts at {right}")]
    ConcatMismatch { left: NodeId, right: NodeId },
    #[error("invalid path: {0}")]
    InvalidPath(PathViolation),
}

impl From<PathViolation> for GraphError {
    fn from(v: PathViolation) -> Self {
        GraphError::InvalidPath(v)
    }
}

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: non-positive weight")]
    Domain { line: usize },
    #[error("line {line}: node {node} exceeds declared node count {node_count}")]
    Range {
        line: usize,
        node: u64,
        node_count: usize,
    },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpError {
    #[error("uniqueness of an empty path is not defined here")]
    EmptyPath,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Failure of a via-edge / via-node compression or decompression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ViaError {
    #[error("cannot compress an empty path")]
    EmptyPath,
    #[error("prefix bounds out of range: j={j}, k={k}, path length {len}")]
    BadRange { j: usize, k: usize, len: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("integrity error in gap {gap} ({from} -> {to}): {reason}")]
    Integrity {
        gap: usize,
        from: NodeId,
        to: NodeId,
        reason: IntegrityReason,
    },
    #[error("edge at position {position} is not a unique shortest path; graph was not split")]
    NotSplit { position: usize },
    #[error("via edge ({tail}, {head}) does not exist")]
    MissingVia { tail: NodeId, head: NodeId },
    #[error(transparent)]
    Ch(#[from] ChError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrityReason {
    Unreachable,
    Ambiguous,
}

impl std::fmt::Display for IntegrityReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntegrityReason::Unreachable => f.write_str("unreachable"),
            IntegrityReason::Ambiguous => f.write_str("shortest path is not unique"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChError {
    #[error("unknown shortcut ({tail}, {head})")]
    UnknownShortcut { tail: NodeId, head: NodeId },
    #[error("ch path is not consecutive at position {0}")]
    NotConsecutive(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum HierarchyFormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("bad magic")]
    BadMagic,
    #[error("unexpected end of data")]
    Truncated,
    #[error("trailing bytes after hierarchy")]
    TrailingBytes,
    #[error("weight {0} does not fit the weight type")]
    WeightRange(u64),
    #[error("invalid hierarchy: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("bad magic")]
    BadMagic,
    #[error("message truncated")]
    Truncated,
    #[error("varint overflow")]
    VarintOverflow,
    #[error("unknown method tag {0}")]
    UnknownMethod(u8),
    #[error("node id out of range")]
    NodeRange,
    #[error("{0} trailing bytes")]
    TrailingBytes(usize),
    #[error("non-zero padding bits in shortcut bitmap")]
    BadPadding,
}
