//! Brute-force references. Deliberately naive and independent of the
//! library's search code: they only read adjacency from the graph.
#![allow(dead_code)]

use std::path::PathBuf;

use routezip::codec::{RouteBody, RouteMessage};
use routezip::{ChEdge, EdgeRef, Graph, NodeId};

/// Minimum cost and number of minimum-cost paths (saturated at 2) for one
/// ordered pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairStat {
    pub cost: Option<u64>,
    pub count: u32,
}

/// Enumerates every simple path from every source. With positive weights
/// every shortest path is simple, so this sees all of them.
pub fn all_pairs_by_enumeration(g: &Graph) -> Vec<Vec<PairStat>> {
    let n = g.node_count();
    let mut table = vec![vec![PairStat { cost: None, count: 0 }; n]; n];
    let adj: Vec<Vec<(NodeId, u64)>> = (0..n as NodeId).map(|v| g.out_edges(v).collect()).collect();
    for s in 0..n {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        dfs(&adj, s, 0, &mut on_path, &mut table[s]);
    }
    table
}

fn dfs(adj: &[Vec<(NodeId, u64)>], v: usize, cost: u64, on_path: &mut [bool], row: &mut [PairStat]) {
    let cell = &mut row[v];
    match cell.cost {
        Some(c) if c < cost => {}
        Some(c) if c == cost => cell.count = (cell.count + 1).min(2),
        _ => *cell = PairStat { cost: Some(cost), count: 1 },
    }
    for &(w, wt) in &adj[v] {
        let w = w as usize;
        if !on_path[w] {
            on_path[w] = true;
            dfs(adj, w, cost + wt, on_path, row);
            on_path[w] = false;
        }
    }
}

/// All-pairs distances by Floyd–Warshall.
pub fn floyd(g: &Graph) -> Vec<Vec<Option<u64>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for (e, w) in g.edges() {
        let cell = &mut d[e.tail as usize][e.head as usize];
        *cell = Some(cell.map_or(w, |c: u64| c.min(w)));
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k] else { continue };
            let row_k = d[k].clone();
            for (j, kj) in row_k.into_iter().enumerate() {
                if let Some(kj) = kj {
                    let via = ik + kj;
                    if d[i][j].is_none_or(|c| via < c) {
                        d[i][j] = Some(via);
                    }
                }
            }
        }
    }
    d
}

pub fn cost(g: &Graph, p: &[EdgeRef]) -> u64 {
    p.iter().map(|e| g.weight(e.tail, e.head).expect("edge exists")).sum()
}

/// True iff `p[i..j]` is the only minimum-cost path between its endpoints
/// (an empty range is trivially unique).
pub fn gap_is_unique(g: &Graph, table: &[Vec<PairStat>], p: &[EdgeRef], i: usize, j: usize) -> bool {
    if i == j {
        return true;
    }
    let stat = table[p[i].tail as usize][p[j - 1].head as usize];
    stat.count == 1 && stat.cost == Some(cost(g, &p[i..j]))
}

/// Size of the smallest subsequence of `p` whose gaps are all unique
/// shortest paths, by trying every subset in order of size.
pub fn min_via_count(g: &Graph, table: &[Vec<PairStat>], p: &[EdgeRef]) -> usize {
    let k = p.len();
    assert!(k < 20, "subset enumeration is exponential");
    (0..=k)
        .find(|&size| {
            (0u32..1 << k).filter(|m| m.count_ones() as usize == size).any(|mask| {
                let mut start = 0;
                for i in 0..k {
                    if mask & (1 << i) != 0 {
                        if !gap_is_unique(g, table, p, start, i) {
                            return false;
                        }
                        start = i + 1;
                    }
                }
                gap_is_unique(g, table, p, start, k)
            })
        })
        .expect("choosing every edge always works")
}

/// Every simple path with 1..=max_len edges.
pub fn simple_paths(g: &Graph, max_len: usize) -> Vec<Vec<EdgeRef>> {
    fn rec(g: &Graph, cur: &mut Vec<EdgeRef>, seen: &mut Vec<bool>, max_len: usize, out: &mut Vec<Vec<EdgeRef>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        let at = cur.last().expect("seeded with an edge or start").head;
        for (w, _) in g.out_edges(at) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                cur.push(EdgeRef::new(at, w));
                rec(g, cur, seen, max_len, out);
                cur.pop();
                seen[w as usize] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.node_count() as NodeId {
        let mut seen = vec![false; g.node_count()];
        seen[s as usize] = true;
        for (w, _) in g.out_edges(s) {
            seen[w as usize] = true;
            let mut cur = vec![EdgeRef::new(s, w)];
            rec(g, &mut cur, &mut seen, max_len, &mut out);
            seen[w as usize] = false;
        }
    }
    out
}

/// Messages frozen in `tests/fixtures`, by file name.
pub fn golden_messages() -> Vec<(&'static str, RouteMessage)> {
    let ch = |t, h, shortcut| ChEdge { tail: t, head: h, shortcut };
    vec![
        (
            "via_edges_empty.bin",
            RouteMessage { map_version: 1, source: 0, target: 5, body: RouteBody::ViaEdges(vec![]) },
        ),
        (
            "via_edges_diamond.bin",
            RouteMessage {
                map_version: 0x0123_4567_89ab_cdef,
                source: 0,
                target: 3,
                body: RouteBody::ViaEdges(vec![EdgeRef::new(1, 3)]),
            },
        ),
        (
            "via_nodes.bin",
            RouteMessage { map_version: 42, source: 10, target: 3, body: RouteBody::ViaNodes(vec![4, 300, 2]) },
        ),
        (
            "ch_path.bin",
            RouteMessage {
                map_version: 7,
                source: 0,
                target: 9,
                body: RouteBody::ChPath((0..9).map(|i| ch(i, i + 1, matches!(i, 0 | 3 | 8))).collect()),
            },
        ),
        (
            "combined_extremes.bin",
            RouteMessage {
                map_version: u64::MAX,
                source: u32::MAX,
                target: 0,
                body: RouteBody::Combined(vec![ch(0, u32::MAX, true), ch(5, 6, false)]),
            },
        ),
    ]
}

pub fn fixture(name: &str) -> Vec<u8> {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}
