use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::ch::{ChEdge, Hierarchy, Shortcut};
use crate::error::GraphError;
use crate::graph::{EdgeRef, Graph, NodeId};
use crate::weight::{add_weights, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildParams {
    /// Witness searches do not expand nodes this many hops away from the
    /// source.
    pub hop_limit: usize,
    /// Witness searches stop after settling this many nodes.
    pub settle_limit: usize,
    /// Contract nodes in exactly this order instead of the heuristic one.
    pub order: Option<Vec<NodeId>>,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams {
            hop_limit: 16,
            settle_limit: 1000,
            order: None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct OverlayEdge<W> {
    node: NodeId,
    weight: W,
    shortcut: bool,
}

struct Candidate<W> {
    from: OverlayEdge<W>,
    to: OverlayEdge<W>,
    weight: W,
}

/// Remaining (uncontracted) graph plus witness-search scratch.
struct Overlay<W> {
    out: Vec<Vec<OverlayEdge<W>>>,
    inc: Vec<Vec<OverlayEdge<W>>>,
    epoch: u32,
    stamp: Vec<u32>,
    dist: Vec<W>,
    hops: Vec<u32>,
    heap: BinaryHeap<Reverse<(W, NodeId)>>,
}

impl<W: Weight> Overlay<W> {
    fn new(g: &Graph<W>) -> Self {
        let n = g.node_count();
        let edge = |(node, weight)| OverlayEdge {
            node,
            weight,
            shortcut: false,
        };
        Overlay {
            out: (0..n as NodeId).map(|v| g.out_edges(v).map(edge).collect()).collect(),
            inc: (0..n as NodeId).map(|v| g.in_edges(v).map(edge).collect()).collect(),
            epoch: 0,
            stamp: vec![0; n],
            dist: vec![W::infinity(); n],
            hops: vec![0; n],
            heap: BinaryHeap::new(),
        }
    }

    fn dist(&self, v: NodeId) -> W {
        if self.stamp[v as usize] == self.epoch {
            self.dist[v as usize]
        } else {
            W::infinity()
        }
    }

    /// Bounded Dijkstra from `source` that never enters `skip`. Afterwards
    /// `dist` holds upper bounds on path costs avoiding `skip`.
    fn witness_search(&mut self, source: NodeId, skip: NodeId, bound: W, params: &BuildParams) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.heap.clear();
        let epoch = self.epoch;
        self.stamp[source as usize] = epoch;
        self.dist[source as usize] = W::zero();
        self.hops[source as usize] = 0;
        self.heap.push(Reverse((W::zero(), source)));
        let mut settled = 0usize;
        while let Some(Reverse((d, v))) = self.heap.pop() {
            if d > self.dist[v as usize] {
                continue;
            }
            if d > bound || settled >= params.settle_limit {
                break;
            }
            settled += 1;
            let hops = self.hops[v as usize];
            if hops as usize >= params.hop_limit {
                continue;
            }
            for i in 0..self.out[v as usize].len() {
                let e = self.out[v as usize][i];
                if e.node == skip {
                    continue;
                }
                let Some(nd) = add_weights(d, e.weight) else { continue };
                if nd < self.dist(e.node) {
                    self.stamp[e.node as usize] = epoch;
                    self.dist[e.node as usize] = nd;
                    self.hops[e.node as usize] = hops + 1;
                    self.heap.push(Reverse((nd, e.node)));
                }
            }
        }
    }

    /// Shortcuts needed if `u` were contracted now.
    fn shortcuts_for(&mut self, u: NodeId, params: &BuildParams) -> Result<Vec<Candidate<W>>, GraphError> {
        let ins = self.inc[u as usize].clone();
        let outs = self.out[u as usize].clone();
        let mut found = Vec::new();
        let Some(max_out) = outs.iter().map(|e| e.weight).max() else {
            return Ok(found);
        };
        for from in ins {
            let bound = add_weights(from.weight, max_out).ok_or(GraphError::CostOverflow)?;
            self.witness_search(from.node, u, bound, params);
            for &to in &outs {
                if to.node == from.node {
                    continue;
                }
                let weight = add_weights(from.weight, to.weight).ok_or(GraphError::CostOverflow)?;
                if self.dist(to.node) <= weight {
                    continue;
                }
                found.push(Candidate { from, to, weight });
            }
        }
        Ok(found)
    }

    fn upsert(list: &mut Vec<OverlayEdge<W>>, e: OverlayEdge<W>) {
        match list.iter_mut().find(|x| x.node == e.node) {
            Some(x) => *x = e,
            None => list.push(e),
        }
    }

    fn remove(&mut self, u: NodeId) {
        for e in std::mem::take(&mut self.out[u as usize]) {
            self.inc[e.node as usize].retain(|x| x.node != u);
        }
        for e in std::mem::take(&mut self.inc[u as usize]) {
            self.out[e.node as usize].retain(|x| x.node != u);
        }
    }
}

/// Builds a contraction hierarchy.
///
/// Nodes are contracted one at a time, cheapest first by
/// `edge_difference + contracted_neighbors` (priorities are re-evaluated when
/// popped; ties go to the smaller id), or in `params.order` when given. A
/// shortcut is skipped whenever the witness search finds a path no more
/// expensive than it.
pub fn build<W: Weight>(g: &Graph<W>, params: &BuildParams) -> Result<Hierarchy<W>, GraphError> {
    let n = g.node_count();
    let mut state = Contraction {
        overlay: Overlay::new(g),
        levels: vec![u32::MAX; n],
        contracted_neighbors: vec![0; n],
        shortcuts: HashMap::new(),
    };

    if let Some(order) = &params.order {
        let mut seen = vec![false; n];
        for &u in order {
            if (u as usize) >= n || std::mem::replace(&mut seen[u as usize], true) {
                return Err(GraphError::NodeOutOfRange {
                    node: u as u64,
                    node_count: n,
                });
            }
        }
        if order.len() != n {
            return Err(GraphError::NodeOutOfRange {
                node: order.len() as u64,
                node_count: n,
            });
        }
        for (rank, &u) in order.iter().enumerate() {
            let found = state.overlay.shortcuts_for(u, params)?;
            state.contract(u, found, rank as u32);
        }
    } else {
        let mut heap = BinaryHeap::with_capacity(n);
        for u in 0..n as NodeId {
            let (p, _) = state.priority(u, params)?;
            heap.push(Reverse((p, u)));
        }
        let mut rank = 0u32;
        while let Some(Reverse((_, u))) = heap.pop() {
            let (p, found) = state.priority(u, params)?;
            if let Some(&Reverse(top)) = heap.peek() {
                if (p, u) > top {
                    heap.push(Reverse((p, u)));
                    continue;
                }
            }
            state.contract(u, found, rank);
            rank += 1;
        }
    }

    let original = g.edges().collect();
    let shortcuts = state.shortcuts.into_values().collect();
    Ok(Hierarchy::from_parts(state.levels, original, shortcuts)
        .expect("contraction produces a valid hierarchy"))
}

struct Contraction<W> {
    overlay: Overlay<W>,
    levels: Vec<u32>,
    contracted_neighbors: Vec<i64>,
    shortcuts: HashMap<EdgeRef, Shortcut<W>>,
}

impl<W: Weight> Contraction<W> {
    fn priority(&mut self, u: NodeId, params: &BuildParams) -> Result<(i64, Vec<Candidate<W>>), GraphError> {
        let found = self.overlay.shortcuts_for(u, params)?;
        let removed = (self.overlay.out[u as usize].len() + self.overlay.inc[u as usize].len()) as i64;
        let p = found.len() as i64 - removed + self.contracted_neighbors[u as usize];
        Ok((p, found))
    }

    fn contract(&mut self, u: NodeId, found: Vec<Candidate<W>>, rank: u32) {
        let overlay = &mut self.overlay;
        for c in found {
            let (v, w) = (c.from.node, c.to.node);
            Overlay::upsert(
                &mut overlay.out[v as usize],
                OverlayEdge {
                    node: w,
                    weight: c.weight,
                    shortcut: true,
                },
            );
            Overlay::upsert(
                &mut overlay.inc[w as usize],
                OverlayEdge {
                    node: v,
                    weight: c.weight,
                    shortcut: true,
                },
            );
            // an older shortcut for the same pair is never a constituent of
            // anything yet: both its endpoints are still uncontracted
            self.shortcuts.insert(
                EdgeRef::new(v, w),
                Shortcut {
                    edge: EdgeRef::new(v, w),
                    weight: c.weight,
                    middle: u,
                    first: ChEdge {
                        tail: v,
                        head: u,
                        shortcut: c.from.shortcut,
                    },
                    second: ChEdge {
                        tail: u,
                        head: w,
                        shortcut: c.to.shortcut,
                    },
                },
            );
        }
        let mut neighbors: Vec<NodeId> = overlay.out[u as usize]
            .iter()
            .chain(&overlay.inc[u as usize])
            .map(|e| e.node)
            .collect();
        neighbors.sort_unstable();
        neighbors.dedup();
        for x in neighbors {
            self.contracted_neighbors[x as usize] += 1;
        }
        overlay.remove(u);
        self.levels[u as usize] = rank;
    }
}
