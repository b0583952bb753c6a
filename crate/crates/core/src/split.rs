//! Edge splitting so that every path can be represented by via nodes.
//!
//! Each edge that is not the unique shortest path between its endpoints is
//! replaced by two half-weight edges through a fresh midpoint node. Weights
//! are doubled first so that halves stay integral; doubling preserves which
//! paths are shortest and whether they are unique.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{DimacsError, GraphError};
use crate::graph::{EdgeRef, Graph, NodeId, Path};
use crate::sp::SpEngine;
use crate::weight::Weight;

/// Midpoints created by [`split_non_unique_edges`]. Midpoint ids are
/// contiguous, starting right after the original nodes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitMapping {
    original_nodes: usize,
    midpoints: Vec<EdgeRef>,
    by_edge: HashMap<EdgeRef, NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LowerError {
    #[error("path ends inside split edge at position {0}")]
    DanglingMidpoint(usize),
    #[error("edge {0} enters a midpoint but the next edge does not leave it correctly")]
    BrokenSplit(usize),
}

impl SplitMapping {
    fn new(original_nodes: usize, midpoints: Vec<EdgeRef>) -> Self {
        let by_edge = midpoints
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, (original_nodes + i) as NodeId))
            .collect();
        SplitMapping {
            original_nodes,
            midpoints,
            by_edge,
        }
    }

    pub fn original_nodes(&self) -> usize {
        self.original_nodes
    }

    pub fn len(&self) -> usize {
        self.midpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.midpoints.is_empty()
    }

    pub fn midpoint(&self, e: EdgeRef) -> Option<NodeId> {
        self.by_edge.get(&e).copied()
    }

    /// The original edge a synthetic node was inserted into.
    pub fn split_edge(&self, w: NodeId) -> Option<EdgeRef> {
        (w as usize)
            .checked_sub(self.original_nodes)
            .and_then(|i| self.midpoints.get(i).copied())
    }

    pub fn is_midpoint(&self, v: NodeId) -> bool {
        self.split_edge(v).is_some()
    }

    /// Maps a path of the original graph into the split graph.
    pub fn lift_path(&self, p: &[EdgeRef]) -> Path {
        let mut out = Vec::with_capacity(p.len());
        for &e in p {
            match self.midpoint(e) {
                Some(w) => {
                    out.push(EdgeRef::new(e.tail, w));
                    out.push(EdgeRef::new(w, e.head));
                }
                None => out.push(e),
            }
        }
        Path::from_edges(out)
    }

    /// Inverse of [`SplitMapping::lift_path`].
    pub fn lower_path(&self, p: &[EdgeRef]) -> Result<Path, LowerError> {
        let mut out = Vec::with_capacity(p.len());
        let mut i = 0;
        while i < p.len() {
            let e = p[i];
            if self.is_midpoint(e.tail) {
                return Err(LowerError::BrokenSplit(i));
            }
            match self.split_edge(e.head) {
                Some(orig) => {
                    let next = p.get(i + 1).ok_or(LowerError::DanglingMidpoint(i))?;
                    if orig.tail != e.tail || next.tail != e.head || next.head != orig.head {
                        return Err(LowerError::BrokenSplit(i));
                    }
                    out.push(orig);
                    i += 2;
                }
                None => {
                    out.push(e);
                    i += 1;
                }
            }
        }
        Ok(Path::from_edges(out))
    }

    /// Text form: `s <original_nodes> <count>` then one `m <tail> <head>` line
    /// per midpoint (1-based ids, in midpoint order).
    pub fn write<Wr: Write>(&self, mut out: Wr) -> std::io::Result<()> {
        writeln!(out, "s {} {}", self.original_nodes, self.midpoints.len())?;
        for e in &self.midpoints {
            writeln!(out, "m {} {}", e.tail + 1, e.head + 1)?;
        }
        out.flush()
    }

    pub fn read<R: BufRead>(reader: R) -> Result<Self, DimacsError> {
        let bad = |line: usize, message: &str| DimacsError::Parse {
            line,
            message: message.to_string(),
        };
        let mut header: Option<(usize, usize)> = None;
        let mut midpoints = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                ["c", ..] => {}
                ["s", n, k] if header.is_none() => {
                    let n = n.parse().map_err(|_| bad(line_no, "bad node count"))?;
                    let k = k.parse().map_err(|_| bad(line_no, "bad midpoint count"))?;
                    header = Some((n, k));
                }
                ["m", t, h] => {
                    let (n, _) = header.ok_or_else(|| bad(line_no, "midpoint before header"))?;
                    let parse = |s: &str| -> Result<NodeId, DimacsError> {
                        let v: u64 = s.parse().map_err(|_| bad(line_no, "bad node id"))?;
                        if v == 0 || v > n as u64 {
                            return Err(DimacsError::Range {
                                line: line_no,
                                node: v,
                                node_count: n,
                            });
                        }
                        Ok((v - 1) as NodeId)
                    };
                    midpoints.push(EdgeRef::new(parse(t)?, parse(h)?));
                }
                _ => return Err(bad(line_no, "unrecognized line")),
            }
        }
        let (n, k) = header.ok_or_else(|| bad(0, "missing header"))?;
        if k != midpoints.len() {
            return Err(bad(0, "midpoint count mismatch"));
        }
        Ok(SplitMapping::new(n, midpoints))
    }
}

/// Doubles every weight, then splits each edge that is not a unique shortest
/// path. In the result every edge is a unique shortest path, and distances
/// between original nodes are exactly twice the input distances.
pub fn split_non_unique_edges<W: Weight>(g: &Graph<W>) -> Result<(Graph<W>, SplitMapping), GraphError> {
    let engine = SpEngine::new(g);
    let n = g.node_count();
    let mut edges = Vec::with_capacity(g.edge_count());
    let mut midpoints = Vec::new();
    for (e, w) in g.edges() {
        let doubled = w
            .checked_mul(&W::two())
            .filter(|&d| d != W::infinity())
            .ok_or(GraphError::CostOverflow)?;
        let unique = engine
            .is_unique_sp(&[e])
            .expect("single-edge path is never empty");
        if unique {
            edges.push((e.tail, e.head, doubled));
        } else {
            let mid = NodeId::try_from(n + midpoints.len()).map_err(|_| GraphError::NodeOutOfRange {
                node: (n + midpoints.len()) as u64,
                node_count: NodeId::MAX as usize,
            })?;
            edges.push((e.tail, mid, w));
            edges.push((mid, e.head, w));
            midpoints.push(e);
        }
    }
    let split = Graph::from_edges(n + midpoints.len(), edges)?;
    Ok((split, SplitMapping::new(n, midpoints)))
}
