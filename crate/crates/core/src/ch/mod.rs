//! Contraction hierarchies: construction, queries, and path compression by
//! shortcut substitution.
//!
//! A shortcut `(v, w)` stands for the two-edge path `(v, u), (u, w)` through a
//! middle node `u` contracted before both `v` and `w`. Either constituent may
//! itself be a shortcut. Edges are identified by their endpoints plus a
//! shortcut flag ([`ChEdge`]); at most one shortcut exists per node pair.

mod build;
mod compress;
mod io;
mod query;

use std::collections::HashMap;

pub use build::{build, BuildParams};
pub use compress::{compress_combined, compress_with_ch, decompress_combined, CombinedRepr};
pub use io::{read_hierarchy, write_hierarchy, HIERARCHY_MAGIC};
pub use query::ChQueryResult;

use crate::error::ChError;
use crate::graph::{EdgeRef, NodeId, Path};
use crate::weight::{add_weights, Weight};

/// An edge of the search graph: an original edge or a shortcut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChEdge {
    pub tail: NodeId,
    pub head: NodeId,
    pub shortcut: bool,
}

impl ChEdge {
    pub const fn original(tail: NodeId, head: NodeId) -> Self {
        ChEdge {
            tail,
            head,
            shortcut: false,
        }
    }

    pub const fn shortcut(tail: NodeId, head: NodeId) -> Self {
        ChEdge {
            tail,
            head,
            shortcut: true,
        }
    }

    pub fn pair(self) -> EdgeRef {
        EdgeRef::new(self.tail, self.head)
    }
}

impl From<EdgeRef> for ChEdge {
    fn from(e: EdgeRef) -> Self {
        ChEdge::original(e.tail, e.head)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shortcut<W> {
    pub edge: EdgeRef,
    pub weight: W,
    pub middle: NodeId,
    /// `(tail, middle)`
    pub first: ChEdge,
    /// `(middle, head)`
    pub second: ChEdge,
}

/// A path over search-graph edges, possibly mixing shortcuts and original
/// edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ChPath {
    edges: Vec<ChEdge>,
}

impl ChPath {
    pub fn from_edges(edges: Vec<ChEdge>) -> Self {
        ChPath { edges }
    }

    pub fn edges(&self) -> &[ChEdge] {
        &self.edges
    }

    pub fn into_edges(self) -> Vec<ChEdge> {
        self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn shortcut_count(&self) -> usize {
        self.edges.iter().filter(|e| e.shortcut).count()
    }

    pub fn nodes(&self) -> Vec<NodeId> {
        let mut nodes = Vec::with_capacity(self.edges.len() + 1);
        if let Some(first) = self.edges.first() {
            nodes.push(first.tail);
        }
        nodes.extend(self.edges.iter().map(|e| e.head));
        nodes
    }
}

impl From<&Path> for ChPath {
    fn from(p: &Path) -> Self {
        ChPath {
            edges: p.edges().iter().map(|&e| e.into()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct SearchEdge<W> {
    pub other: NodeId,
    pub weight: W,
    pub shortcut: bool,
}

/// Adjacency lists in CSR form.
#[derive(Clone, Debug)]
pub(crate) struct Csr<W> {
    offsets: Vec<usize>,
    edges: Vec<SearchEdge<W>>,
}

impl<W: Copy> Csr<W> {
    fn from_lists(mut lists: Vec<(NodeId, SearchEdge<W>)>, n: usize) -> Self {
        lists.sort_by_key(|(v, e)| (*v, e.other));
        let mut offsets = vec![0; n + 1];
        for (v, _) in &lists {
            offsets[*v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Csr {
            offsets,
            edges: lists.into_iter().map(|(_, e)| e).collect(),
        }
    }

    pub(crate) fn neighbors(&self, v: NodeId) -> &[SearchEdge<W>] {
        &self.edges[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }
}

/// Node levels, original edges, shortcuts and the derived up/down search
/// graph.
#[derive(Clone, Debug)]
pub struct Hierarchy<W> {
    levels: Vec<u32>,
    original: Vec<(EdgeRef, W)>,
    shortcuts: Vec<Shortcut<W>>,
    shortcut_index: HashMap<EdgeRef, usize>,
    /// Upward edges by tail.
    pub(crate) up: Csr<W>,
    /// Downward edges by head, `other` is the tail.
    pub(crate) down_rev: Csr<W>,
}

impl<W: Weight> Hierarchy<W> {
    /// Assembles and validates a hierarchy. Every invariant is checked:
    /// levels form a permutation, original edges are positive and unique,
    /// shortcut middles sit strictly below both endpoints, constituents exist
    /// and weights add up.
    pub fn from_parts(
        levels: Vec<u32>,
        mut original: Vec<(EdgeRef, W)>,
        mut shortcuts: Vec<Shortcut<W>>,
    ) -> Result<Self, String> {
        let n = levels.len();
        let mut seen = vec![false; n];
        for &l in &levels {
            let l = l as usize;
            if l >= n || seen[l] {
                return Err(format!("levels are not a permutation of 0..{n}"));
            }
            seen[l] = true;
        }
        let in_range = |v: NodeId| (v as usize) < n;

        original.sort_unstable_by_key(|(e, _)| *e);
        for win in original.windows(2) {
            if win[0].0 == win[1].0 {
                return Err(format!("duplicate original edge {:?}", win[0].0));
            }
        }
        for (e, w) in &original {
            if !in_range(e.tail) || !in_range(e.head) || e.tail == e.head {
                return Err(format!("bad original edge {e:?}"));
            }
            if w.is_zero() || *w == W::infinity() {
                return Err(format!("bad weight on original edge {e:?}"));
            }
        }

        shortcuts.sort_unstable_by_key(|s| s.edge);
        let mut shortcut_index = HashMap::with_capacity(shortcuts.len());
        for (i, s) in shortcuts.iter().enumerate() {
            if shortcut_index.insert(s.edge, i).is_some() {
                return Err(format!("duplicate shortcut {:?}", s.edge));
            }
        }

        let original_weight = |e: EdgeRef| {
            original
                .binary_search_by_key(&e, |(x, _)| *x)
                .ok()
                .map(|i| original[i].1)
        };
        let weight_of = |e: ChEdge| {
            if e.shortcut {
                shortcut_index.get(&e.pair()).map(|&i| shortcuts[i].weight)
            } else {
                original_weight(e.pair())
            }
        };
        for s in &shortcuts {
            let (v, w, u) = (s.edge.tail, s.edge.head, s.middle);
            if !in_range(v) || !in_range(w) || !in_range(u) || v == w {
                return Err(format!("bad shortcut {:?}", s.edge));
            }
            let lu = levels[u as usize];
            if lu >= levels[v as usize] || lu >= levels[w as usize] {
                return Err(format!("shortcut {:?} middle {u} is not below its endpoints", s.edge));
            }
            if s.first.pair() != EdgeRef::new(v, u) || s.second.pair() != EdgeRef::new(u, w) {
                return Err(format!("shortcut {:?} constituents do not pass through {u}", s.edge));
            }
            let (Some(a), Some(b)) = (weight_of(s.first), weight_of(s.second)) else {
                return Err(format!("shortcut {:?} has a missing constituent", s.edge));
            };
            if add_weights(a, b) != Some(s.weight) {
                return Err(format!("shortcut {:?} weight mismatch", s.edge));
            }
        }

        // search graph: one edge per pair, the cheaper one; originals win ties
        let mut best: HashMap<EdgeRef, (W, bool)> = HashMap::new();
        for &(e, w) in &original {
            best.insert(e, (w, false));
        }
        for s in &shortcuts {
            let entry = best.entry(s.edge).or_insert((s.weight, true));
            if s.weight < entry.0 {
                *entry = (s.weight, true);
            }
        }
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (e, (weight, shortcut)) in best {
            if levels[e.tail as usize] < levels[e.head as usize] {
                up.push((
                    e.tail,
                    SearchEdge {
                        other: e.head,
                        weight,
                        shortcut,
                    },
                ));
            } else {
                down.push((
                    e.head,
                    SearchEdge {
                        other: e.tail,
                        weight,
                        shortcut,
                    },
                ));
            }
        }

        Ok(Hierarchy {
            up: Csr::from_lists(up, n),
            down_rev: Csr::from_lists(down, n),
            levels,
            original,
            shortcuts,
            shortcut_index,
        })
    }

    pub fn node_count(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, v: NodeId) -> u32 {
        self.levels[v as usize]
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn original_edges(&self) -> &[(EdgeRef, W)] {
        &self.original
    }

    pub fn shortcuts(&self) -> &[Shortcut<W>] {
        &self.shortcuts
    }

    pub fn shortcut(&self, e: EdgeRef) -> Option<&Shortcut<W>> {
        self.shortcut_index.get(&e).map(|&i| &self.shortcuts[i])
    }

    pub fn original_weight(&self, e: EdgeRef) -> Option<W> {
        self.original
            .binary_search_by_key(&e, |(x, _)| *x)
            .ok()
            .map(|i| self.original[i].1)
    }

    /// Weight of an original edge or shortcut (the cost of its unpacked path).
    pub fn edge_weight(&self, e: ChEdge) -> Option<W> {
        if e.shortcut {
            self.shortcut(e.pair()).map(|s| s.weight)
        } else {
            self.original_weight(e.pair())
        }
    }

    /// Maximum number of incoming or outgoing search-graph edges of a node.
    pub fn max_degree(&self) -> usize {
        (0..self.node_count() as NodeId)
            .map(|v| {
                let ups = self.up.neighbors(v).len();
                let downs = self.down_rev.neighbors(v).len();
                ups.max(downs)
            })
            .max()
            .unwrap_or(0)
    }

    /// Appends the original edges represented by `e`.
    pub fn unpack_edge_into(&self, e: ChEdge, out: &mut Vec<EdgeRef>) -> Result<(), ChError> {
        let mut stack = vec![e];
        while let Some(top) = stack.pop() {
            if top.shortcut {
                let s = self.shortcut(top.pair()).ok_or(ChError::UnknownShortcut {
                    tail: top.tail,
                    head: top.head,
                })?;
                stack.push(s.second);
                stack.push(s.first);
            } else {
                out.push(top.pair());
            }
        }
        Ok(())
    }

    /// Replaces shortcuts by their constituents until only original edges are
    /// left.
    pub fn unpack(&self, cp: &[ChEdge]) -> Result<Path, ChError> {
        for (i, w) in cp.windows(2).enumerate() {
            if w[0].head != w[1].tail {
                return Err(ChError::NotConsecutive(i + 1));
            }
        }
        let mut out = Vec::with_capacity(cp.len());
        for &e in cp {
            self.unpack_edge_into(e, &mut out)?;
        }
        Ok(Path::from_edges(out))
    }
}
