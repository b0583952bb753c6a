use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::ch::{ChEdge, ChPath, Csr, Hierarchy};
use crate::graph::NodeId;
use crate::weight::{add_weights, Cost, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChQueryResult<W> {
    pub distance: Cost<W>,
    /// Up-then-down path attaining `distance`; `None` when unreachable.
    pub path: Option<ChPath>,
}

struct Side<W> {
    dist: Vec<W>,
    parent: Vec<(NodeId, bool)>,
    heap: BinaryHeap<Reverse<(W, NodeId)>>,
}

impl<W: Weight> Side<W> {
    fn new(n: usize, root: NodeId) -> Self {
        let mut dist = vec![W::infinity(); n];
        dist[root as usize] = W::zero();
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((W::zero(), root)));
        Side {
            dist,
            parent: vec![(root, false); n],
            heap,
        }
    }

    fn min_key(&self) -> W {
        self.heap.peek().map_or(W::infinity(), |Reverse((d, _))| *d)
    }

    /// Settles one node; returns it for meeting-point checks.
    fn step(&mut self, graph: &Csr<W>) -> Option<NodeId> {
        while let Some(Reverse((d, v))) = self.heap.pop() {
            if d > self.dist[v as usize] {
                continue;
            }
            for e in graph.neighbors(v) {
                let Some(nd) = add_weights(d, e.weight) else { continue };
                if nd < self.dist[e.other as usize] {
                    self.dist[e.other as usize] = nd;
                    self.parent[e.other as usize] = (v, e.shortcut);
                    self.heap.push(Reverse((nd, e.other)));
                }
            }
            return Some(v);
        }
        None
    }
}

impl<W: Weight> Hierarchy<W> {
    /// Bidirectional upward search: forward over upward edges from `s`,
    /// backward over downward edges from `t`.
    pub fn query(&self, s: NodeId, t: NodeId) -> ChQueryResult<W> {
        let n = self.node_count();
        assert!((s as usize) < n && (t as usize) < n, "query endpoints out of range");
        let mut fwd = Side::new(n, s);
        let mut bwd = Side::new(n, t);
        let mut best = W::infinity();
        let mut meet = None;
        let consider = |v: NodeId, fwd: &Side<W>, bwd: &Side<W>, best: &mut W, meet: &mut Option<NodeId>| {
            let (a, b) = (fwd.dist[v as usize], bwd.dist[v as usize]);
            if a == W::infinity() || b == W::infinity() {
                return;
            }
            if let Some(total) = add_weights(a, b) {
                if total < *best {
                    *best = total;
                    *meet = Some(v);
                }
            }
        };
        loop {
            let (kf, kb) = (fwd.min_key(), bwd.min_key());
            let f_done = kf >= best;
            let b_done = kb >= best;
            if f_done && b_done {
                break;
            }
            if !f_done && (b_done || kf <= kb) {
                if let Some(v) = fwd.step(&self.up) {
                    consider(v, &fwd, &bwd, &mut best, &mut meet);
                }
            } else if let Some(v) = bwd.step(&self.down_rev) {
                consider(v, &fwd, &bwd, &mut best, &mut meet);
            }
        }

        let Some(m) = meet else {
            return ChQueryResult {
                distance: Cost::infinity(),
                path: None,
            };
        };
        let mut edges = Vec::new();
        let mut v = m;
        while v != s {
            let (u, shortcut) = fwd.parent[v as usize];
            edges.push(ChEdge {
                tail: u,
                head: v,
                shortcut,
            });
            v = u;
        }
        edges.reverse();
        let mut v = m;
        while v != t {
            let (w, shortcut) = bwd.parent[v as usize];
            edges.push(ChEdge {
                tail: v,
                head: w,
                shortcut,
            });
            v = w;
        }
        ChQueryResult {
            distance: Cost::finite(best).expect("finite distance"),
            path: Some(ChPath::from_edges(edges)),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::ch::{build, BuildParams, ChEdge};
    use crate::graph::{EdgeRef, Graph, NodeId, Path};

    const A: NodeId = 0;
    const B: NodeId = 1;
    const C: NodeId = 2;
    const D: NodeId = 3;
    const E: NodeId = 4;

    fn chain_hierarchy() -> crate::ch::Hierarchy<u32> {
        let g = Graph::from_edges(5, [(A, B, 1), (B, C, 1), (C, D, 1), (D, E, 1)]).unwrap();
        build(
            &g,
            &BuildParams {
                order: Some(vec![B, C, D, A, E]),
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn chain_queries() {
        let h = chain_hierarchy();
        let r = h.query(A, E);
        assert_eq!(r.distance.value(), 4);
        let path = r.path.unwrap();
        assert_eq!(path.edges(), &[ChEdge::shortcut(A, E)]);
        assert_eq!(h.unpack(path.edges()).unwrap(), Path::from_nodes(&[A, B, C, D, E]));

        let r = h.query(A, A);
        assert_eq!(r.distance.value(), 0);
        assert!(r.path.unwrap().is_empty());

        let r = h.query(E, A);
        assert!(r.distance.is_infinite());
        assert!(r.path.is_none());

        let r = h.query(B, D);
        assert_eq!(r.distance.value(), 2);
        let p = h.unpack(r.path.unwrap().edges()).unwrap();
        assert_eq!(p.edges(), &[EdgeRef::new(B, C), EdgeRef::new(C, D)]);
    }
}
