use crate::ch::{ChEdge, ChPath, Hierarchy};
use crate::error::{ChError, GraphError, ViaError};
use crate::graph::{validate_path, EdgeRef, NodeId, Path};
use crate::sp::SpEngine;
use crate::via::{unique_gap, GapOracle, PrefixSearch, ViaRepr};
use crate::weight::{Cost, Weight};

/// Via-edge representation of a CH-compressed path. Via edges may be
/// shortcuts.
pub type CombinedRepr = ViaRepr<ChEdge>;

/// Contracts `p` as far as the hierarchy allows.
///
/// Interior nodes are visited by increasing level (ties by position). A node
/// is removed when a shortcut exists whose middle is that node and whose
/// constituents are exactly the two edges currently around it. The result
/// unpacks to `p` and is a fixed point of this function.
///
/// `p` must be a valid path of the graph the hierarchy was built from.
pub fn compress_with_ch<W: Weight>(h: &Hierarchy<W>, p: &[EdgeRef]) -> ChPath {
    let n = p.len();
    if n < 2 {
        return ChPath::from_edges(p.iter().map(|&e| e.into()).collect());
    }
    let nodes: Vec<NodeId> = std::iter::once(p[0].tail)
        .chain(p.iter().map(|e| e.head))
        .collect();
    // doubly linked list over node positions; edge_from[i] leaves position i
    let mut prev: Vec<usize> = (0..=n).map(|i| i.wrapping_sub(1)).collect();
    let mut next: Vec<usize> = (1..=n + 1).collect();
    let mut edge_from: Vec<ChEdge> = p.iter().map(|&e| e.into()).collect();

    let mut interior: Vec<usize> = (1..n).collect();
    interior.sort_by_key(|&i| (h.level(nodes[i]), i));

    for i in interior {
        let (a, b) = (prev[i], next[i]);
        let (first, second) = (edge_from[a], edge_from[i]);
        let Some(s) = h.shortcut(EdgeRef::new(nodes[a], nodes[b])) else {
            continue;
        };
        if s.middle != nodes[i] || s.first != first || s.second != second {
            continue;
        }
        edge_from[a] = ChEdge::shortcut(nodes[a], nodes[b]);
        next[a] = b;
        prev[b] = a;
    }

    let mut out = Vec::new();
    let mut at = 0;
    while at < n {
        out.push(edge_from[at]);
        at = next[at];
    }
    ChPath::from_edges(out)
}

fn ch_cost<W: Weight>(h: &Hierarchy<W>, e: ChEdge) -> Result<W, ViaError> {
    let missing = if e.shortcut {
        ViaError::Ch(ChError::UnknownShortcut {
            tail: e.tail,
            head: e.head,
        })
    } else {
        ViaError::Graph(GraphError::MissingEdge {
            tail: e.tail,
            head: e.head,
        })
    };
    h.edge_weight(e).ok_or(missing)
}

/// CH compression followed by via-edge compression of the shortcut path.
///
/// A gap of the shortcut path is accepted when its unpacked form is the
/// unique shortest path in the original graph of `engine`. Decompression
/// therefore only needs plain shortest-path queries plus shortcut unpacking.
pub fn compress_combined<W: Weight>(
    h: &Hierarchy<W>,
    engine: &SpEngine<'_, W>,
    p: &[EdgeRef],
    search: PrefixSearch,
) -> Result<CombinedRepr, ViaError> {
    if p.is_empty() {
        return Err(ViaError::EmptyPath);
    }
    validate_path(engine.graph(), p).map_err(|v| ViaError::Graph(v.into()))?;
    let cp = compress_with_ch(h, p);
    let mut prefix = Vec::with_capacity(cp.len() + 1);
    let mut acc = Cost::<W>::zero();
    prefix.push(acc.value());
    for &e in cp.edges() {
        acc = acc.checked_add_weight(ch_cost(h, e)?)?;
        prefix.push(acc.value());
    }
    let oracle = GapOracle::from_parts(engine, cp.nodes(), prefix);
    let vias = oracle
        .via_indices(search)
        .into_iter()
        .map(|i| cp.edges()[i])
        .collect();
    Ok(ViaRepr {
        source: p[0].tail,
        target: p[p.len() - 1].head,
        vias,
    })
}

/// Inverse of [`compress_combined`]: unique shortest paths in the original
/// graph between anchors, with shortcut via edges unpacked.
pub fn decompress_combined<W: Weight>(
    h: &Hierarchy<W>,
    engine: &SpEngine<'_, W>,
    r: &CombinedRepr,
) -> Result<Path, ViaError> {
    let g = engine.graph();
    let mut out = Path::new();
    let mut at = r.source;
    let mut scratch = Vec::new();
    for (gap, via) in r.vias.iter().enumerate() {
        out.extend_from_slice(unique_gap(engine, gap, at, via.tail)?.edges());
        if via.shortcut {
            scratch.clear();
            h.unpack_edge_into(*via, &mut scratch)?;
            if let Some(missing) = scratch.iter().find(|e| !g.has_edge(**e)) {
                return Err(ViaError::MissingVia {
                    tail: missing.tail,
                    head: missing.head,
                });
            }
            out.extend_from_slice(&scratch);
        } else {
            if !g.has_edge(via.pair()) {
                return Err(ViaError::MissingVia {
                    tail: via.tail,
                    head: via.head,
                });
            }
            out.push(via.pair());
        }
        at = via.head;
    }
    out.extend_from_slice(unique_gap(engine, r.vias.len(), at, r.target)?.edges());
    Ok(out)
}
