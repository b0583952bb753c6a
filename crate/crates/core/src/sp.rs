//! One-to-one Dijkstra with shortest-path multiplicity.
//!
//! Besides the distance, every query reports how many distinct shortest paths
//! reach the target, saturated at two. With positive integer weights a node's
//! count is final when it is settled: all of its equal-distance predecessors
//! have strictly smaller labels and were settled before it.

use std::cell::{Cell, RefCell};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::SpError;
use crate::graph::{path_cost, EdgeRef, Graph, NodeId, Path};
use crate::weight::{add_weights, Cost, Weight};

/// Number of distinct shortest paths, saturated at two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Zero,
    One,
    Many,
}

impl Multiplicity {
    pub fn saturating_add(self, other: Multiplicity) -> Multiplicity {
        Multiplicity::from_count(self.count() + other.count())
    }

    pub fn from_count(n: u32) -> Multiplicity {
        match n {
            0 => Multiplicity::Zero,
            1 => Multiplicity::One,
            _ => Multiplicity::Many,
        }
    }

    /// 0, 1 or 2.
    pub fn count(self) -> u32 {
        self as u32
    }

    pub fn is_unique(self) -> bool {
        self == Multiplicity::One
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpResult<W> {
    pub distance: Cost<W>,
    pub multiplicity: Multiplicity,
    /// A shortest path; `None` iff the target is unreachable.
    pub witness: Option<Path>,
}

struct Scratch<W> {
    epoch: u32,
    stamp: Vec<u32>,
    dist: Vec<W>,
    count: Vec<Multiplicity>,
    parent: Vec<NodeId>,
    heap: BinaryHeap<Reverse<(W, NodeId)>>,
}

impl<W: Weight> Scratch<W> {
    fn new(n: usize) -> Self {
        Scratch {
            epoch: 0,
            stamp: vec![0; n],
            dist: vec![W::infinity(); n],
            count: vec![Multiplicity::Zero; n],
            parent: vec![0; n],
            heap: BinaryHeap::new(),
        }
    }

    fn next_epoch(&mut self) {
        self.heap.clear();
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }

    fn dist(&self, v: NodeId) -> W {
        if self.stamp[v as usize] == self.epoch {
            self.dist[v as usize]
        } else {
            W::infinity()
        }
    }
}

/// Dijkstra engine bound to one graph.
///
/// Scratch space is reused between queries, so an engine is meant to be used
/// from one thread; create one engine per worker. Every call to
/// [`SpEngine::query`] or [`SpEngine::probe`] increments the query counter.
pub struct SpEngine<'g, W> {
    graph: &'g Graph<W>,
    queries: Cell<u64>,
    scratch: RefCell<Scratch<W>>,
}

impl<'g, W: Weight> SpEngine<'g, W> {
    pub fn new(graph: &'g Graph<W>) -> Self {
        SpEngine {
            graph,
            queries: Cell::new(0),
            scratch: RefCell::new(Scratch::new(graph.node_count())),
        }
    }

    pub fn graph(&self) -> &'g Graph<W> {
        self.graph
    }

    /// Queries issued since construction or the last reset.
    pub fn query_count(&self) -> u64 {
        self.queries.get()
    }

    pub fn reset_query_count(&self) {
        self.queries.set(0);
    }

    /// Shortest `s -> t` distance, multiplicity and a witness path. Among
    /// equal-distance predecessors the witness follows the one settled first
    /// (smaller node id on equal labels).
    pub fn query(&self, s: NodeId, t: NodeId) -> SpResult<W> {
        let mut scratch = self.scratch.borrow_mut();
        let (distance, multiplicity) = self.run(&mut scratch, s, t);
        let witness = distance.is_finite().then(|| {
            let mut edges = Vec::new();
            let mut v = t;
            while v != s {
                let u = scratch.parent[v as usize];
                edges.push(EdgeRef::new(u, v));
                v = u;
            }
            edges.reverse();
            Path::from_edges(edges)
        });
        SpResult {
            distance,
            multiplicity,
            witness,
        }
    }

    /// Like [`SpEngine::query`] without building the witness.
    pub fn probe(&self, s: NodeId, t: NodeId) -> (Cost<W>, Multiplicity) {
        let mut scratch = self.scratch.borrow_mut();
        self.run(&mut scratch, s, t)
    }

    fn run(&self, sc: &mut Scratch<W>, s: NodeId, t: NodeId) -> (Cost<W>, Multiplicity) {
        assert!(
            self.graph.contains_node(s) && self.graph.contains_node(t),
            "query endpoints out of range"
        );
        self.queries.set(self.queries.get() + 1);
        sc.next_epoch();
        let epoch = sc.epoch;
        sc.stamp[s as usize] = epoch;
        sc.dist[s as usize] = W::zero();
        sc.count[s as usize] = Multiplicity::One;
        sc.parent[s as usize] = s;
        sc.heap.push(Reverse((W::zero(), s)));

        while let Some(Reverse((d, u))) = sc.heap.pop() {
            if d > sc.dist[u as usize] {
                continue;
            }
            if u == t {
                return (Cost::finite(d).expect("finite label"), sc.count[u as usize]);
            }
            let cu = sc.count[u as usize];
            for (v, w) in self.graph.out_edges(u) {
                // sums that overflow can never be shortest among representable costs
                let Some(nd) = add_weights(d, w) else { continue };
                let old = sc.dist(v);
                if nd < old {
                    sc.stamp[v as usize] = epoch;
                    sc.dist[v as usize] = nd;
                    sc.count[v as usize] = cu;
                    sc.parent[v as usize] = u;
                    sc.heap.push(Reverse((nd, v)));
                } else if nd == old {
                    let c = &mut sc.count[v as usize];
                    *c = c.saturating_add(cu);
                }
            }
        }
        (Cost::infinity(), Multiplicity::Zero)
    }

    /// True iff `p` is the unique shortest path between its endpoints.
    pub fn is_unique_sp(&self, p: &[EdgeRef]) -> Result<bool, SpError> {
        let (first, last) = match (p.first(), p.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(SpError::EmptyPath),
        };
        let cost = path_cost(self.graph, p)?;
        let (dist, mult) = self.probe(first.tail, last.head);
        Ok(dist == cost && mult.is_unique())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: NodeId = 0;
    const B: NodeId = 1;
    const C: NodeId = 2;
    const D: NodeId = 3;
    const E: NodeId = 4;

    fn g1() -> Graph<u32> {
        Graph::from_edges(4, [(A, B, 1), (B, D, 1), (A, C, 1), (C, D, 1)]).unwrap()
    }

    fn g2() -> Graph<u32> {
        Graph::from_edges(5, [(A, B, 1), (B, C, 1), (C, D, 1), (D, E, 1)]).unwrap()
    }

    fn g3() -> Graph<u32> {
        Graph::from_edges(4, [(A, B, 1), (B, D, 1), (A, C, 1), (C, D, 1), (A, D, 2)]).unwrap()
    }

    #[test]
    fn chain_is_unique() {
        let g = g2();
        let e = SpEngine::new(&g);
        let r = e.query(A, E);
        assert_eq!(r.distance.value(), 4);
        assert_eq!(r.multiplicity, Multiplicity::One);
        assert_eq!(r.witness.unwrap(), Path::from_nodes(&[A, B, C, D, E]));
    }

    #[test]
    fn diamond_has_two_shortest_paths() {
        let g = g1();
        let e = SpEngine::new(&g);
        let r = e.query(A, D);
        assert_eq!(r.distance.value(), 2);
        assert_eq!(r.multiplicity, Multiplicity::Many);
        // first-settled predecessor of d is b (id 1 < 3)
        assert_eq!(r.witness.unwrap(), Path::from_nodes(&[A, B, D]));
    }

    #[test]
    fn unreachable() {
        let g = g1();
        let e = SpEngine::new(&g);
        let r = e.query(D, A);
        assert!(r.distance.is_infinite());
        assert_eq!(r.multiplicity, Multiplicity::Zero);
        assert!(r.witness.is_none());
    }

    #[test]
    fn trivial_query() {
        let g = g1();
        let e = SpEngine::new(&g);
        let r = e.query(C, C);
        assert_eq!(r.distance.value(), 0);
        assert_eq!(r.multiplicity, Multiplicity::One);
        assert_eq!(r.witness.unwrap(), Path::new());
    }

    #[test]
    fn uniqueness_predicate() {
        let (g1, g2, g3) = (g1(), g2(), g3());
        assert!(SpEngine::new(&g2)
            .is_unique_sp(&[EdgeRef::new(A, B)])
            .unwrap());
        assert!(!SpEngine::new(&g1)
            .is_unique_sp(Path::from_nodes(&[A, B, D]).edges())
            .unwrap());
        assert!(!SpEngine::new(&g3)
            .is_unique_sp(&[EdgeRef::new(A, D)])
            .unwrap());
        assert_eq!(SpEngine::new(&g3).is_unique_sp(&[]), Err(SpError::EmptyPath));
    }

    #[test]
    fn non_shortest_path_is_not_unique_sp() {
        let g = Graph::<u32>::from_edges(3, [(A, B, 1), (B, C, 1), (A, C, 1)]).unwrap();
        let e = SpEngine::new(&g);
        assert!(!e.is_unique_sp(Path::from_nodes(&[A, B, C]).edges()).unwrap());
        assert!(e.is_unique_sp(&[EdgeRef::new(A, C)]).unwrap());
    }

    #[test]
    fn counter() {
        let g = g2();
        let e = SpEngine::new(&g);
        e.reset_query_count();
        assert_eq!(e.query_count(), 0);
        e.query(A, E);
        assert_eq!(e.query_count(), 1);
        e.probe(B, C);
        e.is_unique_sp(&[EdgeRef::new(A, B)]).unwrap();
        assert_eq!(e.query_count(), 3);
        e.reset_query_count();
        assert_eq!(e.query_count(), 0);
    }

    #[test]
    fn multiplicity_saturates() {
        use Multiplicity::*;
        assert_eq!(One.saturating_add(One), Many);
        assert_eq!(Many.saturating_add(Many), Many);
        assert_eq!(Zero.saturating_add(One), One);
    }

    #[test]
    fn scratch_reuse_across_many_queries() {
        let g = g3();
        let e = SpEngine::new(&g);
        for _ in 0..5 {
            assert_eq!(e.probe(A, D), (Cost::finite(2).unwrap(), Multiplicity::Many));
            assert_eq!(e.probe(B, D), (Cost::finite(1).unwrap(), Multiplicity::One));
            assert_eq!(e.probe(D, B), (Cost::infinity(), Multiplicity::Zero));
        }
    }
}
