//! Directed graph with positive integer weights, and paths over it.

use std::fmt;

use crate::error::GraphError;
use crate::weight::{Cost, Weight};

pub type NodeId = u32;

/// An edge identified by its endpoints. After parallel-edge removal the pair
/// is unique in a [`Graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub tail: NodeId,
    pub head: NodeId,
}

impl EdgeRef {
    pub const fn new(tail: NodeId, head: NodeId) -> Self {
        EdgeRef { tail, head }
    }
}

impl From<(NodeId, NodeId)> for EdgeRef {
    fn from((tail, head): (NodeId, NodeId)) -> Self {
        EdgeRef { tail, head }
    }
}

/// Immutable weighted digraph in compressed sparse row form, with both
/// outgoing and incoming adjacency. Neighbor lists are sorted by node id.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph<W> {
    node_count: usize,
    out_offsets: Vec<usize>,
    out_heads: Vec<NodeId>,
    out_weights: Vec<W>,
    in_offsets: Vec<usize>,
    in_tails: Vec<NodeId>,
    in_weights: Vec<W>,
    duplicates_dropped: usize,
}

impl<W: Weight> Graph<W> {
    /// Builds a graph from an edge list. Parallel edges collapse to the
    /// minimum weight; each dropped copy bumps [`Graph::duplicates_dropped`].
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId, W)>,
    {
        if node_count > NodeId::MAX as usize {
            return Err(GraphError::NodeOutOfRange {
                node: node_count as u64,
                node_count: NodeId::MAX as usize,
            });
        }
        let mut list: Vec<(NodeId, NodeId, W)> = Vec::new();
        for (tail, head, w) in edges {
            for node in [tail, head] {
                if node as usize >= node_count {
                    return Err(GraphError::NodeOutOfRange {
                        node: node as u64,
                        node_count,
                    });
                }
            }
            if tail == head {
                return Err(GraphError::SelfLoop(tail));
            }
            if w.is_zero() {
                return Err(GraphError::NonPositiveWeight { tail, head });
            }
            if w == W::infinity() {
                return Err(GraphError::CostOverflow);
            }
            list.push((tail, head, w));
        }
        list.sort_unstable();
        let before = list.len();
        list.dedup_by(|later, earlier| later.0 == earlier.0 && later.1 == earlier.1);
        let duplicates_dropped = before - list.len();

        let mut out_offsets = vec![0usize; node_count + 1];
        for &(t, _, _) in &list {
            out_offsets[t as usize + 1] += 1;
        }
        for i in 0..node_count {
            out_offsets[i + 1] += out_offsets[i];
        }
        let out_heads = list.iter().map(|e| e.1).collect();
        let out_weights = list.iter().map(|e| e.2).collect();

        let mut by_head = list;
        by_head.sort_unstable_by_key(|&(t, h, _)| (h, t));
        let mut in_offsets = vec![0usize; node_count + 1];
        for &(_, h, _) in &by_head {
            in_offsets[h as usize + 1] += 1;
        }
        for i in 0..node_count {
            in_offsets[i + 1] += in_offsets[i];
        }
        let in_tails = by_head.iter().map(|e| e.0).collect();
        let in_weights = by_head.iter().map(|e| e.2).collect();

        Ok(Graph {
            node_count,
            out_offsets,
            out_heads,
            out_weights,
            in_offsets,
            in_tails,
            in_weights,
            duplicates_dropped,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.out_heads.len()
    }

    /// Number of parallel input edges discarded during construction.
    pub fn duplicates_dropped(&self) -> usize {
        self.duplicates_dropped
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        (v as usize) < self.node_count
    }

    /// Outgoing `(head, weight)` pairs, sorted by head.
    pub fn out_edges(&self, v: NodeId) -> impl ExactSizeIterator<Item = (NodeId, W)> + '_ {
        let range = self.out_offsets[v as usize]..self.out_offsets[v as usize + 1];
        self.out_heads[range.clone()]
            .iter()
            .copied()
            .zip(self.out_weights[range].iter().copied())
    }

    /// Incoming `(tail, weight)` pairs, sorted by tail.
    pub fn in_edges(&self, v: NodeId) -> impl ExactSizeIterator<Item = (NodeId, W)> + '_ {
        let range = self.in_offsets[v as usize]..self.in_offsets[v as usize + 1];
        self.in_tails[range.clone()]
            .iter()
            .copied()
            .zip(self.in_weights[range].iter().copied())
    }

    pub fn weight(&self, tail: NodeId, head: NodeId) -> Option<W> {
        if !self.contains_node(tail) {
            return None;
        }
        let range = self.out_offsets[tail as usize]..self.out_offsets[tail as usize + 1];
        let heads = &self.out_heads[range.clone()];
        heads
            .binary_search(&head)
            .ok()
            .map(|i| self.out_weights[range.start + i])
    }

    pub fn edge_weight(&self, e: EdgeRef) -> Result<W, GraphError> {
        self.weight(e.tail, e.head).ok_or(GraphError::MissingEdge {
            tail: e.tail,
            head: e.head,
        })
    }

    pub fn has_edge(&self, e: EdgeRef) -> bool {
        self.weight(e.tail, e.head).is_some()
    }

    /// All edges in `(tail, head)` order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeRef, W)> + '_ {
        (0..self.node_count as NodeId).flat_map(move |t| {
            self.out_edges(t)
                .map(move |(h, w)| (EdgeRef::new(t, h), w))
        })
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.out_offsets[v as usize + 1] - self.out_offsets[v as usize]
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.in_offsets[v as usize + 1] - self.in_offsets[v as usize]
    }

    /// Checks `p` against this graph. See [`validate_path`].
    pub fn validate_path(&self, p: &[EdgeRef]) -> Result<(), PathViolation> {
        validate_path(self, p)
    }
}

impl<W: Weight> fmt::Debug for Graph<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("node_count", &self.node_count)
            .field("edge_count", &self.edge_count())
            .finish()
    }
}

/// A sequence of consecutive edges. The empty path is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Path {
    edges: Vec<EdgeRef>,
}

impl Path {
    pub fn new() -> Self {
        Path { edges: Vec::new() }
    }

    /// Wraps an edge list without checking consecutiveness.
    pub fn from_edges(edges: Vec<EdgeRef>) -> Self {
        Path { edges }
    }

    /// Builds the path visiting `nodes` in order. Fewer than two nodes give
    /// the empty path.
    pub fn from_nodes(nodes: &[NodeId]) -> Self {
        Path {
            edges: nodes.windows(2).map(|w| EdgeRef::new(w[0], w[1])).collect(),
        }
    }

    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn into_edges(self) -> Vec<EdgeRef> {
        self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> Option<NodeId> {
        self.edges.first().map(|e| e.tail)
    }

    pub fn target(&self) -> Option<NodeId> {
        self.edges.last().map(|e| e.head)
    }

    /// Node sequence u1, ..., u(n+1). Empty for the empty path.
    pub fn nodes(&self) -> Vec<NodeId> {
        let mut nodes = Vec::with_capacity(self.edges.len() + 1);
        if let Some(first) = self.edges.first() {
            nodes.push(first.tail);
        }
        nodes.extend(self.edges.iter().map(|e| e.head));
        nodes
    }

    pub fn push(&mut self, e: EdgeRef) {
        self.edges.push(e);
    }

    pub(crate) fn extend_from_slice(&mut self, edges: &[EdgeRef]) {
        self.edges.extend_from_slice(edges);
    }
}

impl From<Vec<EdgeRef>> for Path {
    fn from(edges: Vec<EdgeRef>) -> Self {
        Path { edges }
    }
}

impl AsRef<[EdgeRef]> for Path {
    fn as_ref(&self) -> &[EdgeRef] {
        &self.edges
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Edge does not start where the previous one ended.
    NotConsecutive,
    /// Edge is not in the graph.
    MissingEdge,
}

/// First offending position (0-based edge index) of an invalid path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathViolation {
    pub position: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::NotConsecutive => {
                write!(f, "edge {} does not continue the path", self.position)
            }
            ViolationKind::MissingEdge => write!(f, "edge {} is not in the graph", self.position),
        }
    }
}

pub fn validate_path<W: Weight>(g: &Graph<W>, p: &[EdgeRef]) -> Result<(), PathViolation> {
    for (i, e) in p.iter().enumerate() {
        if i > 0 && p[i - 1].head != e.tail {
            return Err(PathViolation {
                position: i,
                kind: ViolationKind::NotConsecutive,
            });
        }
        if !g.has_edge(*e) {
            return Err(PathViolation {
                position: i,
                kind: ViolationKind::MissingEdge,
            });
        }
    }
    Ok(())
}

/// Sum of the edge weights of `p`; zero for the empty path.
pub fn path_cost<W: Weight>(g: &Graph<W>, p: &[EdgeRef]) -> Result<Cost<W>, GraphError> {
    p.iter().try_fold(Cost::zero(), |acc, e| {
        acc.checked_add_weight(g.edge_weight(*e)?)
    })
}

/// `p ⊕ q`. Either side may be empty.
pub fn concat(p: &Path, q: &Path) -> Result<Path, GraphError> {
    if let (Some(left), Some(right)) = (p.target(), q.source()) {
        if left != right {
            return Err(GraphError::ConcatMismatch { left, right });
        }
    }
    let mut edges = Vec::with_capacity(p.len() + q.len());
    edges.extend_from_slice(p.edges());
    edges.extend_from_slice(q.edges());
    Ok(Path { edges })
}
