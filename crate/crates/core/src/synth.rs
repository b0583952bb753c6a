//! Seeded synthetic graphs and paths.
//!
//! Every generator takes its randomness from an explicit `ChaCha8Rng`, so a
//! seed fully determines the output.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::graph::{EdgeRef, NodeId, Path};
use crate::{Graph, SpEngine, Weight};

pub use rand::SeedableRng;
pub type SynthRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SynthRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightSpec {
    Unit,
    /// Uniform in `lo..=hi`.
    Random { lo: Weight, hi: Weight },
}

impl WeightSpec {
    fn draw(self, rng: &mut SynthRng) -> Weight {
        match self {
            WeightSpec::Unit => 1,
            WeightSpec::Random { lo, hi } => rng.gen_range(lo..=hi),
        }
    }
}

impl FromStr for WeightSpec {
    type Err = String;

    /// `unit` or `random:LO..HI` (inclusive, `1 <= LO <= HI`).
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "unit" {
            return Ok(WeightSpec::Unit);
        }
        let range = s
            .strip_prefix("random:")
            .ok_or_else(|| format!("expected `unit` or `random:LO..HI`, got `{s}`"))?;
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| format!("expected LO..HI, got `{range}`"))?;
        let lo: Weight = lo.parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
        let hi: Weight = hi.parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
        if lo == 0 || lo > hi || hi == Weight::MAX {
            return Err(format!("weight range {lo}..{hi} must satisfy 1 <= LO <= HI < 2^64-1"));
        }
        Ok(WeightSpec::Random { lo, hi })
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::Unit => f.write_str("unit"),
            WeightSpec::Random { lo, hi } => write!(f, "random:{lo}..{hi}"),
        }
    }
}

/// `width × height` lattice with both directions of every lattice edge;
/// node `(x, y)` has id `y * width + x`. Each direction draws its own weight.
pub fn grid(width: usize, height: usize, weights: WeightSpec, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = rng(seed);
    let id = |x: usize, y: usize| (y * width + x) as NodeId;
    let mut edges = Vec::with_capacity(4 * width * height);
    for y in 0..height {
        for x in 0..width {
            if x + 1 < width {
                edges.push((id(x, y), id(x + 1, y), weights.draw(&mut rng)));
                edges.push((id(x + 1, y), id(x, y), weights.draw(&mut rng)));
            }
            if y + 1 < height {
                edges.push((id(x, y), id(x, y + 1), weights.draw(&mut rng)));
                edges.push((id(x, y + 1), id(x, y), weights.draw(&mut rng)));
            }
        }
    }
    Graph::from_edges(width * height, edges)
}

/// Directed chain `0 → 1 → … → n-1`.
pub fn chain(n: usize, weights: WeightSpec, seed: u64) -> Result<Graph, GraphError> {
    let mut rng = rng(seed);
    let edges: Vec<_> = (1..n)
        .map(|i| ((i - 1) as NodeId, i as NodeId, weights.draw(&mut rng)))
        .collect();
    Graph::from_edges(n, edges)
}

/// `a → b → d`, `a → c → d`, all weights 1 (ids 0..4).
pub fn diamond() -> Graph {
    Graph::from_edges(4, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)]).expect("valid diamond")
}

/// Each ordered pair of distinct nodes gets an edge with probability
/// `density`, weight uniform in `1..=max_weight`. Small `max_weight` makes
/// ties common.
pub fn random_graph(n: usize, density: f64, max_weight: Weight, rng: &mut SynthRng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in 0..n as NodeId {
            if u != v && rng.gen_bool(density) {
                edges.push((u, v, rng.gen_range(1..=max_weight)));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated edges are valid")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthError {
    #[error("requested path length is zero")]
    EmptyPath,
    #[error("graph has no edges to walk on")]
    NoEdges,
    #[error("walk reached node {0}, which has no outgoing edges")]
    DeadEnd(NodeId),
}

fn random_start(g: &Graph, rng: &mut SynthRng) -> Result<NodeId, SynthError> {
    let candidates: Vec<NodeId> = (0..g.node_count() as NodeId)
        .filter(|&v| g.out_degree(v) > 0)
        .collect();
    candidates.choose(rng).copied().ok_or(SynthError::NoEdges)
}

/// Random walk of exactly `len` edges that avoids stepping straight back
/// where it came from unless that is the only way out.
pub fn random_walk(g: &Graph, len: usize, rng: &mut SynthRng) -> Result<Path, SynthError> {
    if len == 0 {
        return Err(SynthError::EmptyPath);
    }
    let mut at = random_start(g, rng)?;
    let mut prev = None;
    let mut path = Path::new();
    let mut succ = Vec::new();
    while path.len() < len {
        succ.clear();
        succ.extend(g.out_edges(at).map(|(v, _)| v).filter(|&v| Some(v) != prev));
        if succ.is_empty() {
            succ.extend(g.out_edges(at).map(|(v, _)| v));
        }
        let &next = succ.choose(rng).ok_or(SynthError::DeadEnd(at))?;
        path.push(EdgeRef::new(at, next));
        prev = Some(at);
        at = next;
    }
    Ok(path)
}

/// Appends shortest-path legs towards random waypoints until `nodes` spans
/// `len` edges or no waypoint is reachable any more.
fn extend_with_legs(engine: &SpEngine<'_>, nodes: &mut Vec<NodeId>, len: usize, rng: &mut SynthRng) {
    let n = engine.graph().node_count() as NodeId;
    let mut failures = 0;
    while nodes.len() <= len && failures < 32 {
        let at = *nodes.last().expect("non-empty");
        let waypoint = rng.gen_range(0..n);
        match engine.query(at, waypoint).witness {
            Some(leg) if !leg.is_empty() => {
                nodes.extend(leg.edges().iter().map(|e| e.head));
                failures = 0;
            }
            _ => failures += 1,
        }
    }
    nodes.truncate(len + 1);
}

/// Concatenated shortest paths through random waypoints, with `detours`
/// random excursions spliced in, truncated to `len` edges.
///
/// A detour leaves the route at some node over a random edge that is not the
/// route's own next edge and rejoins it a few nodes later by a shortest path.
/// With `detours == 0` and a single leg the result is a shortest path. The
/// result has fewer than `len` edges only if the graph runs out of reachable
/// waypoints.
pub fn perturbed_sp(g: &Graph, len: usize, detours: usize, rng: &mut SynthRng) -> Result<Path, SynthError> {
    if len == 0 {
        return Err(SynthError::EmptyPath);
    }
    let engine = SpEngine::new(g);
    let mut nodes = vec![random_start(g, rng)?];
    extend_with_legs(&engine, &mut nodes, len, rng);

    for _ in 0..detours {
        if nodes.len() < 3 {
            break;
        }
        let i = rng.gen_range(0..nodes.len() - 2);
        let j = (i + rng.gen_range(2..=8)).min(nodes.len() - 1);
        let exits: Vec<NodeId> = g
            .out_edges(nodes[i])
            .map(|(v, _)| v)
            .filter(|&v| v != nodes[i + 1])
            .collect();
        let Some(&x) = exits.choose(rng) else { continue };
        let Some(back) = engine.query(x, nodes[j]).witness else { continue };
        let mut spliced = nodes[..=i].to_vec();
        spliced.push(x);
        spliced.extend(back.edges().iter().map(|e| e.head));
        spliced.extend_from_slice(&nodes[j + 1..]);
        nodes = spliced;
    }
    nodes.truncate(len + 1);
    extend_with_legs(&engine, &mut nodes, len, rng);
    if nodes.len() < 2 {
        return Err(SynthError::DeadEnd(nodes[0]));
    }
    Ok(Path::from_nodes(&nodes))
}

/// Unit-weight chain of `len` edges with `ties` evenly spaced two-hop
/// bypasses `v_i → x → v_{i+2}` of equal cost. Returns the graph and the
/// chain as a path; its minimal via-edge representation has exactly `ties`
/// entries as long as bypasses are at least two positions apart.
pub fn tied_chain(len: usize, ties: usize) -> (Graph, Path) {
    let mut edges: Vec<(NodeId, NodeId, Weight)> =
        (0..len).map(|i| (i as NodeId, i as NodeId + 1, 1)).collect();
    for k in 0..ties {
        let at = ((k + 1) * len / (ties + 1)) as NodeId;
        let x = (len + 1 + k) as NodeId;
        edges.push((at, x, 1));
        edges.push((x, at + 2, 1));
    }
    let g = Graph::from_edges(len + 1 + ties, edges).expect("valid tied chain");
    let nodes: Vec<NodeId> = (0..=len as NodeId).collect();
    (g, Path::from_nodes(&nodes))
}
