//! Path compression by via edges and via nodes.
//!
//! A path `P` is represented by a subsequence `Q` of its edges such that every
//! gap between consecutive via edges (and between the endpoints and the
//! first/last via edge) is the unique shortest path between its end nodes.
//! The receiver rebuilds `P` with one shortest-path query per gap.
//!
//! The greedy scan keeps extending the current gap while it stays a unique
//! shortest path. Since every prefix of a unique shortest path is itself one,
//! the longest unique prefix can also be found by binary or galloping search,
//! which is what [`PrefixSearch::Binary`] and [`PrefixSearch::Gallop`] do.

use crate::error::{IntegrityReason, ViaError};
use crate::graph::{validate_path, EdgeRef, NodeId, Path};
use crate::sp::SpEngine;
use crate::weight::{Cost, Weight};

/// Endpoints plus an ordered list of anchors (via edges or via nodes).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ViaRepr<E> {
    pub source: NodeId,
    pub target: NodeId,
    pub vias: Vec<E>,
}

pub type ViaEdgeRepr = ViaRepr<EdgeRef>;
pub type ViaNodeRepr = ViaRepr<NodeId>;

/// Strategy for finding the longest unique-shortest-path prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrefixSearch {
    /// One uniqueness query per edge.
    Linear,
    /// Bisection over the remaining suffix.
    Binary,
    /// Doubling probes, then bisection inside the bracket.
    Gallop,
}

/// Answers "is the segment `[start, end)` of a path its unique shortest path"
/// from the segment's end nodes and its cost, with one query per call.
pub(crate) struct GapOracle<'e, 'g, W> {
    engine: &'e SpEngine<'g, W>,
    nodes: Vec<NodeId>,
    prefix: Vec<W>,
}

impl<'e, 'g, W: Weight> GapOracle<'e, 'g, W> {
    pub(crate) fn for_path(engine: &'e SpEngine<'g, W>, p: &[EdgeRef]) -> Result<Self, ViaError> {
        let g = engine.graph();
        validate_path(g, p).map_err(|v| ViaError::Graph(v.into()))?;
        let mut nodes = Vec::with_capacity(p.len() + 1);
        let mut prefix = Vec::with_capacity(p.len() + 1);
        let mut acc = Cost::<W>::zero();
        if let Some(first) = p.first() {
            nodes.push(first.tail);
            prefix.push(acc.value());
        }
        for e in p {
            acc = acc.checked_add_weight(g.edge_weight(*e)?)?;
            nodes.push(e.head);
            prefix.push(acc.value());
        }
        Ok(GapOracle {
            engine,
            nodes,
            prefix,
        })
    }

    /// `nodes[i]` is the tail of element `i`; `prefix[i]` the cost of the
    /// first `i` elements.
    pub(crate) fn from_parts(
        engine: &'e SpEngine<'g, W>,
        nodes: Vec<NodeId>,
        prefix: Vec<W>,
    ) -> Self {
        debug_assert_eq!(nodes.len(), prefix.len());
        GapOracle {
            engine,
            nodes,
            prefix,
        }
    }

    /// Number of elements (edges) in the underlying path.
    pub(crate) fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    /// Whether elements `[start, end)` form the unique shortest path. The
    /// empty segment is trivially unique and costs no query.
    pub(crate) fn is_unique(&self, start: usize, end: usize) -> bool {
        debug_assert!(start <= end && end <= self.len());
        if start == end {
            return true;
        }
        let cost = self.prefix[end] - self.prefix[start];
        let (dist, mult) = self.engine.probe(self.nodes[start], self.nodes[end]);
        mult.is_unique() && dist.value() == cost
    }

    /// Largest `q` in `start..=limit` such that `[start, q)` is unique.
    fn max_prefix(&self, search: PrefixSearch, start: usize, limit: usize) -> usize {
        match search {
            PrefixSearch::Linear => {
                let mut q = start;
                while q < limit && self.is_unique(start, q + 1) {
                    q += 1;
                }
                q
            }
            PrefixSearch::Binary => self.bisect(start, start, limit + 1),
            PrefixSearch::Gallop => self.gallop(start, limit),
        }
    }

    /// Invariant: `[start, lo)` is unique; `hi == limit + 1` or `[start, hi)`
    /// is not unique.
    fn bisect(&self, start: usize, mut lo: usize, mut hi: usize) -> usize {
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if self.is_unique(start, mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    fn gallop(&self, start: usize, limit: usize) -> usize {
        if start == limit {
            return start;
        }
        let mut h = 1usize;
        loop {
            let end = (start + h).min(limit);
            if !self.is_unique(start, end) {
                // [start, start + h/2) passed the previous probe (empty when h = 1)
                return self.bisect(start, start + h / 2, end);
            }
            if end == limit {
                return limit;
            }
            h *= 2;
        }
    }

    /// Indices of the via edges, in path order.
    pub(crate) fn via_indices(&self, search: PrefixSearch) -> Vec<usize> {
        let n = self.len();
        let mut vias = Vec::new();
        match search {
            PrefixSearch::Linear => {
                // one uniqueness query per edge, exactly as the textbook scan
                let mut i = 0;
                for j in 0..n {
                    if self.is_unique(i, j + 1) {
                        continue;
                    }
                    vias.push(j);
                    i = j + 1;
                }
            }
            _ => {
                let mut i = 0;
                while i < n {
                    let p = self.max_prefix(search, i, n);
                    if p < n {
                        vias.push(p);
                    }
                    i = p + 1;
                }
            }
        }
        vias
    }

    /// Node positions of the via nodes. Every single element must be unique
    /// on its own, otherwise the scan cannot advance.
    pub(crate) fn anchor_positions(&self, search: PrefixSearch) -> Result<Vec<usize>, ViaError> {
        let n = self.len();
        let mut anchors = Vec::new();
        let mut i = 0;
        while i < n {
            let p = self.max_prefix(search, i, n);
            if p == n {
                break;
            }
            if p == i {
                return Err(ViaError::NotSplit { position: i });
            }
            anchors.push(p);
            i = p;
        }
        Ok(anchors)
    }

    pub(crate) fn node(&self, i: usize) -> NodeId {
        self.nodes[i]
    }
}

fn check_nonempty(p: &[EdgeRef]) -> Result<(), ViaError> {
    if p.is_empty() {
        Err(ViaError::EmptyPath)
    } else {
        Ok(())
    }
}

/// Minimal via-edge representation of `p` using the given prefix search.
/// All three strategies return the same sequence.
pub fn via_edges<W: Weight>(
    engine: &SpEngine<'_, W>,
    p: &[EdgeRef],
    search: PrefixSearch,
) -> Result<ViaEdgeRepr, ViaError> {
    check_nonempty(p)?;
    let oracle = GapOracle::for_path(engine, p)?;
    let vias = oracle
        .via_indices(search)
        .into_iter()
        .map(|i| p[i])
        .collect();
    Ok(ViaRepr {
        source: p[0].tail,
        target: p[p.len() - 1].head,
        vias,
    })
}

/// Greedy left-to-right scan; issues exactly `|p|` uniqueness queries.
pub fn via_edges_linear<W: Weight>(
    engine: &SpEngine<'_, W>,
    p: &[EdgeRef],
) -> Result<ViaEdgeRepr, ViaError> {
    via_edges(engine, p, PrefixSearch::Linear)
}

/// Same result as [`via_edges_linear`] with `O((|Q|+1) log |P|)` queries.
pub fn via_edges_binary<W: Weight>(
    engine: &SpEngine<'_, W>,
    p: &[EdgeRef],
) -> Result<ViaEdgeRepr, ViaError> {
    via_edges(engine, p, PrefixSearch::Binary)
}

/// Same result as [`via_edges_linear`] with `O((|Q|+1) log(|P|/|Q|))` queries.
pub fn via_edges_gallop<W: Weight>(
    engine: &SpEngine<'_, W>,
    p: &[EdgeRef],
) -> Result<ViaEdgeRepr, ViaError> {
    via_edges(engine, p, PrefixSearch::Gallop)
}

fn max_prefix_sp<W: Weight>(
    engine: &SpEngine<'_, W>,
    p: &[EdgeRef],
    j: usize,
    k: usize,
    search: PrefixSearch,
) -> Result<usize, ViaError> {
    if j == 0 || j > k || k > p.len() {
        return Err(ViaError::BadRange {
            j,
            k,
            len: p.len(),
        });
    }
    let oracle = GapOracle::for_path(engine, p)?;
    // 1-based edges j..=q are the 0-based half-open range [j-1, q)
    Ok(oracle.max_prefix(search, j - 1, k))
}

/// Largest `q` in `j-1..=k` such that edges `j..=q` (1-based, inclusive)
/// form a unique shortest path; `q = j-1` when edge `j` alone does not.
pub fn max_prefix_sp_binary<W: Weight>(
    engine: &SpEngine<'_, W>,
    p: &[EdgeRef],
    j: usize,
    k: usize,
) -> Result<usize, ViaError> {
    max_prefix_sp(engine, p, j, k, PrefixSearch::Binary)
}

/// Galloping variant of [`max_prefix_sp_binary`].
pub fn max_prefix_sp_gallop<W: Weight>(
    engine: &SpEngine<'_, W>,
    p: &[EdgeRef],
    j: usize,
    k: usize,
) -> Result<usize, ViaError> {
    max_prefix_sp(engine, p, j, k, PrefixSearch::Gallop)
}

/// Unique shortest path for gap number `gap`, or an integrity error.
pub(crate) fn unique_gap<W: Weight>(
    engine: &SpEngine<'_, W>,
    gap: usize,
    from: NodeId,
    to: NodeId,
) -> Result<Path, ViaError> {
    let g = engine.graph();
    if !g.contains_node(from) || !g.contains_node(to) {
        return Err(ViaError::Integrity {
            gap,
            from,
            to,
            reason: IntegrityReason::Unreachable,
        });
    }
    let r = engine.query(from, to);
    match r.witness {
        Some(w) if r.multiplicity.is_unique() => Ok(w),
        Some(_) => Err(ViaError::Integrity {
            gap,
            from,
            to,
            reason: IntegrityReason::Ambiguous,
        }),
        None => Err(ViaError::Integrity {
            gap,
            from,
            to,
            reason: IntegrityReason::Unreachable,
        }),
    }
}

/// Rebuilds the path: `SP(s, via1.tail) ⊕ via1 ⊕ SP(via1.head, via2.tail) ⊕ … ⊕ SP(vk.head, t)`.
/// Issues `|vias| + 1` queries.
pub fn decompress_via_edges<W: Weight>(
    engine: &SpEngine<'_, W>,
    r: &ViaEdgeRepr,
) -> Result<Path, ViaError> {
    let g = engine.graph();
    let mut out = Path::new();
    let mut at = r.source;
    for (gap, via) in r.vias.iter().enumerate() {
        out.extend_from_slice(unique_gap(engine, gap, at, via.tail)?.edges());
        if !g.has_edge(*via) {
            return Err(ViaError::MissingVia {
                tail: via.tail,
                head: via.head,
            });
        }
        out.push(*via);
        at = via.head;
    }
    out.extend_from_slice(unique_gap(engine, r.vias.len(), at, r.target)?.edges());
    Ok(out)
}

/// Via-node representation of a path in a split graph (see
/// [`split_non_unique_edges`](crate::split::split_non_unique_edges)).
///
/// Each anchor is the last node of a maximal unique-shortest-path segment;
/// the next segment starts there. In a split graph every single edge is a
/// unique shortest path, so every segment is non-empty.
pub fn via_nodes<W: Weight>(
    engine: &SpEngine<'_, W>,
    p: &[EdgeRef],
    search: PrefixSearch,
) -> Result<ViaNodeRepr, ViaError> {
    check_nonempty(p)?;
    let oracle = GapOracle::for_path(engine, p)?;
    let vias = oracle
        .anchor_positions(search)?
        .into_iter()
        .map(|i| oracle.node(i))
        .collect();
    Ok(ViaRepr {
        source: p[0].tail,
        target: p[p.len() - 1].head,
        vias,
    })
}

/// Stitches unique shortest paths between consecutive anchors.
pub fn decompress_via_nodes<W: Weight>(
    engine: &SpEngine<'_, W>,
    r: &ViaNodeRepr,
) -> Result<Path, ViaError> {
    let mut out = Path::new();
    let mut at = r.source;
    for (gap, &next) in r.vias.iter().chain(std::iter::once(&r.target)).enumerate() {
        out.extend_from_slice(unique_gap(engine, gap, at, next)?.edges());
        at = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::sp::Multiplicity;

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

    const ALL: [PrefixSearch; 3] = [PrefixSearch::Linear, PrefixSearch::Binary, PrefixSearch::Gallop];

    #[test]
    fn unique_chain_needs_no_vias() {
        let g = g2();
        let e = SpEngine::new(&g);
        let p = Path::from_nodes(&[A, B, C, D, E]);
        for s in ALL {
            let r = via_edges(&e, p.edges(), s).unwrap();
            assert_eq!(r, ViaRepr { source: A, target: E, vias: vec![] });
        }
    }

    #[test]
    fn diamond_keeps_second_edge() {
        let g = g1();
        let e = SpEngine::new(&g);
        let p = Path::from_nodes(&[A, B, D]);
        for s in ALL {
            assert_eq!(via_edges(&e, p.edges(), s).unwrap().vias, vec![EdgeRef::new(B, D)]);
        }
    }

    #[test]
    fn tied_single_edge_is_its_own_via() {
        let g = g3();
        let e = SpEngine::new(&g);
        for s in ALL {
            assert_eq!(
                via_edges(&e, &[EdgeRef::new(A, D)], s).unwrap().vias,
                vec![EdgeRef::new(A, D)]
            );
        }
    }

    #[test]
    fn linear_issues_one_query_per_edge() {
        let g = g1();
        let e = SpEngine::new(&g);
        e.reset_query_count();
        via_edges_linear(&e, Path::from_nodes(&[A, B, D]).edges()).unwrap();
        assert_eq!(e.query_count(), 2);
    }

    #[test]
    fn max_prefix_examples() {
        let (g1, g2, g3) = (g1(), g2(), g3());
        let chain = Path::from_nodes(&[A, B, C, D, E]);
        let diamond = Path::from_nodes(&[A, B, D]);
        let tied = [EdgeRef::new(A, D)];
        for f in [max_prefix_sp_binary::<u32>, max_prefix_sp_gallop::<u32>] {
            assert_eq!(f(&SpEngine::new(&g2), chain.edges(), 1, 4).unwrap(), 4);
            assert_eq!(f(&SpEngine::new(&g1), diamond.edges(), 1, 2).unwrap(), 1);
            assert_eq!(f(&SpEngine::new(&g3), &tied, 1, 1).unwrap(), 0);
            assert_eq!(f(&SpEngine::new(&g2), chain.edges(), 1, 1).unwrap(), 1);
            assert_eq!(f(&SpEngine::new(&g2), chain.edges(), 3, 4).unwrap(), 4);
            assert!(f(&SpEngine::new(&g2), chain.edges(), 0, 4).is_err());
            assert!(f(&SpEngine::new(&g2), chain.edges(), 3, 2).is_err());
            assert!(f(&SpEngine::new(&g2), chain.edges(), 1, 5).is_err());
        }
    }

    #[test]
    fn gallop_probe_trace_on_chain() {
        // probes at prefix lengths 1, 2, 4; the last one reaches k and stops
        let g = g2();
        let e = SpEngine::new(&g);
        let chain = Path::from_nodes(&[A, B, C, D, E]);
        let oracle = GapOracle::for_path(&e, chain.edges()).unwrap();
        e.reset_query_count();
        assert_eq!(oracle.max_prefix(PrefixSearch::Gallop, 0, 4), 4);
        assert_eq!(e.query_count(), 3);
    }

    #[test]
    fn decompress_examples() {
        let (g1, g2) = (g1(), g2());
        let e2 = SpEngine::new(&g2);
        let full = decompress_via_edges(&e2, &ViaRepr { source: A, target: E, vias: vec![] }).unwrap();
        assert_eq!(full, Path::from_nodes(&[A, B, C, D, E]));

        let e1 = SpEngine::new(&g1);
        let r = ViaRepr { source: A, target: D, vias: vec![EdgeRef::new(B, D)] };
        assert_eq!(decompress_via_edges(&e1, &r).unwrap(), Path::from_nodes(&[A, B, D]));

        let bad = ViaRepr { source: A, target: D, vias: vec![] };
        assert!(matches!(
            decompress_via_edges(&e1, &bad),
            Err(ViaError::Integrity { gap: 0, reason: IntegrityReason::Ambiguous, .. })
        ));
        let unreachable = ViaRepr { source: D, target: A, vias: vec![] };
        assert!(matches!(
            decompress_via_edges(&e1, &unreachable),
            Err(ViaError::Integrity { reason: IntegrityReason::Unreachable, .. })
        ));
        let missing = ViaRepr { source: A, target: D, vias: vec![EdgeRef::new(B, C)] };
        assert!(decompress_via_edges(&e1, &missing).is_err());
    }

    #[test]
    fn empty_and_invalid_paths_are_rejected() {
        let g = g2();
        let e = SpEngine::new(&g);
        assert_eq!(via_edges_linear(&e, &[]), Err(ViaError::EmptyPath));
        assert!(matches!(
            via_edges_binary(&e, &[EdgeRef::new(A, B), EdgeRef::new(C, D)]),
            Err(ViaError::Graph(_))
        ));
    }

    #[test]
    fn cycles_become_vias() {
        // a -> b -> a -> b: the repeated node can never be inside a shortest path
        let g = Graph::<u32>::from_edges(2, [(A, B, 1), (B, A, 1)]).unwrap();
        let e = SpEngine::new(&g);
        let p = Path::from_nodes(&[A, B, A, B]);
        for s in ALL {
            let r = via_edges(&e, p.edges(), s).unwrap();
            assert_eq!(r.vias, vec![EdgeRef::new(B, A)]);
            assert_eq!(decompress_via_edges(&e, &r).unwrap(), p);
        }
    }

    #[test]
    fn gap_oracle_agrees_with_engine_predicate() {
        let g = g3();
        let e = SpEngine::new(&g);
        let p = Path::from_nodes(&[A, B, D]);
        let o = GapOracle::for_path(&e, p.edges()).unwrap();
        for s in 0..p.len() {
            for t in s + 1..=p.len() {
                assert_eq!(o.is_unique(s, t), e.is_unique_sp(&p.edges()[s..t]).unwrap());
            }
        }
        assert_eq!(e.probe(A, D).1, Multiplicity::Many);
    }
}
