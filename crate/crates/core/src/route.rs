//! Path ⇄ [`RouteMessage`] for each compression scheme.

use std::fmt;
use std::str::FromStr;

use crate::ch::{compress_combined, compress_with_ch, decompress_combined, Hierarchy};
use crate::codec::{RouteBody, RouteMessage};
use crate::dimacs::map_version;
use crate::error::{ChError, ViaError};
use crate::graph::{validate_path, EdgeRef, Graph, NodeId, Path, PathViolation};
use crate::sp::SpEngine;
use crate::split::{LowerError, SplitMapping};
use crate::via::{decompress_via_edges, decompress_via_nodes, via_edges, via_nodes, PrefixSearch, ViaRepr};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    ViaLinear,
    ViaBinary,
    ViaGallop,
    /// Via nodes in the split graph.
    ViaNodes,
    /// Every edge of the shortcut-contracted path.
    Ch,
    /// Via edges of the shortcut-contracted path.
    Combined,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::ViaLinear,
        Scheme::ViaBinary,
        Scheme::ViaGallop,
        Scheme::ViaNodes,
        Scheme::Ch,
        Scheme::Combined,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::ViaLinear => "via-linear",
            Scheme::ViaBinary => "via-binary",
            Scheme::ViaGallop => "via-gallop",
            Scheme::ViaNodes => "via-nodes",
            Scheme::Ch => "ch",
            Scheme::Combined => "combined",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Scheme::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RouteError {
    #[error("this method needs the split graph and its midpoint mapping")]
    MissingSplit,
    #[error("this method needs a contraction hierarchy")]
    MissingHierarchy,
    #[error("path is empty")]
    EmptyPath,
    #[error("path does not fit the graph: {0}")]
    InvalidPath(PathViolation),
    #[error("message was made for map {found:#018x}, this map is {expected:#018x}")]
    VersionMismatch { expected: u64, found: u64 },
    #[error(transparent)]
    Via(#[from] ViaError),
    #[error(transparent)]
    Ch(#[from] ChError),
    #[error("decompressed path leaves the original graph: {0}")]
    Lower(#[from] LowerError),
    #[error("decoded route does not match the graph: {0}")]
    Mismatch(String),
}

impl RouteError {
    /// Errors meaning the message cannot be turned back into the route it
    /// claims to describe, as opposed to bad input or missing preprocessing.
    pub fn is_integrity(&self) -> bool {
        !matches!(
            self,
            RouteError::MissingSplit
                | RouteError::MissingHierarchy
                | RouteError::EmptyPath
                | RouteError::InvalidPath(_)
                | RouteError::Via(ViaError::EmptyPath | ViaError::BadRange { .. })
        )
    }

    pub fn is_usage(&self) -> bool {
        matches!(self, RouteError::MissingSplit | RouteError::MissingHierarchy)
    }
}

pub struct SplitView<'g, W> {
    pub engine: SpEngine<'g, W>,
    pub mapping: &'g SplitMapping,
}

/// Everything both ends of a route transmission share: the graph, optional
/// preprocessing, and one shortest-path engine per graph.
///
/// Holds per-thread scratch state; create one context per worker.
pub struct RouteContext<'g, W> {
    pub map_version: u64,
    pub engine: SpEngine<'g, W>,
    pub split: Option<SplitView<'g, W>>,
    pub hierarchy: Option<&'g Hierarchy<W>>,
}

impl<'g, W: Weight> RouteContext<'g, W> {
    pub fn new(g: &'g Graph<W>) -> Self {
        Self::with_version(g, map_version(g))
    }

    /// Skips hashing the graph when its version is already known.
    pub fn with_version(g: &'g Graph<W>, map_version: u64) -> Self {
        RouteContext {
            map_version,
            engine: SpEngine::new(g),
            split: None,
            hierarchy: None,
        }
    }

    pub fn split(mut self, split_graph: &'g Graph<W>, mapping: &'g SplitMapping) -> Self {
        self.split = Some(SplitView {
            engine: SpEngine::new(split_graph),
            mapping,
        });
        self
    }

    pub fn hierarchy(mut self, h: &'g Hierarchy<W>) -> Self {
        self.hierarchy = Some(h);
        self
    }

    pub fn graph(&self) -> &'g Graph<W> {
        self.engine.graph()
    }

    /// Shortest-path queries issued so far, over all engines.
    pub fn query_count(&self) -> u64 {
        self.engine.query_count() + self.split.as_ref().map_or(0, |s| s.engine.query_count())
    }

    fn need_split(&self) -> Result<&SplitView<'g, W>, RouteError> {
        self.split.as_ref().ok_or(RouteError::MissingSplit)
    }

    fn need_hierarchy(&self) -> Result<&'g Hierarchy<W>, RouteError> {
        self.hierarchy.ok_or(RouteError::MissingHierarchy)
    }

    pub fn compress(&self, scheme: Scheme, p: &[EdgeRef]) -> Result<RouteMessage, RouteError> {
        let (Some(first), Some(last)) = (p.first(), p.last()) else {
            return Err(RouteError::EmptyPath);
        };
        validate_path(self.graph(), p).map_err(RouteError::InvalidPath)?;
        let search = match scheme {
            Scheme::ViaLinear => PrefixSearch::Linear,
            Scheme::ViaBinary => PrefixSearch::Binary,
            _ => PrefixSearch::Gallop,
        };
        let body = match scheme {
            Scheme::ViaLinear | Scheme::ViaBinary | Scheme::ViaGallop => {
                RouteBody::ViaEdges(via_edges(&self.engine, p, search)?.vias)
            }
            Scheme::ViaNodes => {
                let split = self.need_split()?;
                let lifted = split.mapping.lift_path(p);
                RouteBody::ViaNodes(via_nodes(&split.engine, lifted.edges(), search)?.vias)
            }
            Scheme::Ch => RouteBody::ChPath(compress_with_ch(self.need_hierarchy()?, p).into_edges()),
            Scheme::Combined => {
                let h = self.need_hierarchy()?;
                RouteBody::Combined(compress_combined(h, &self.engine, p, search)?.vias)
            }
        };
        Ok(RouteMessage {
            map_version: self.map_version,
            source: first.tail,
            target: last.head,
            body,
        })
    }

    pub fn decompress(&self, m: &RouteMessage) -> Result<Path, RouteError> {
        if m.map_version != self.map_version {
            return Err(RouteError::VersionMismatch {
                expected: self.map_version,
                found: m.map_version,
            });
        }
        let n = self.graph().node_count();
        let in_range = |v: NodeId, limit: usize| (v as usize) < limit;
        if !in_range(m.source, n) || !in_range(m.target, n) {
            return Err(RouteError::Mismatch(format!(
                "endpoint outside the {n}-node graph"
            )));
        }
        let path = match &m.body {
            RouteBody::ViaEdges(vias) => decompress_via_edges(
                &self.engine,
                &ViaRepr {
                    source: m.source,
                    target: m.target,
                    vias: vias.clone(),
                },
            )?,
            RouteBody::ViaNodes(vias) => {
                let split = self.need_split()?;
                let lifted = decompress_via_nodes(
                    &split.engine,
                    &ViaRepr {
                        source: m.source,
                        target: m.target,
                        vias: vias.clone(),
                    },
                )?;
                split.mapping.lower_path(lifted.edges())?
            }
            RouteBody::ChPath(edges) => {
                let h = self.need_hierarchy()?;
                if h.node_count() != n {
                    return Err(RouteError::Mismatch("hierarchy size differs from graph".into()));
                }
                let p = h.unpack(edges)?;
                let ends = (p.source(), p.target());
                if ends != (Some(m.source), Some(m.target)) {
                    return Err(RouteError::Mismatch(format!(
                        "shortcut path runs {ends:?}, message says {:?}",
                        (m.source, m.target)
                    )));
                }
                validate_path(self.graph(), p.edges())
                    .map_err(|v| RouteError::Mismatch(v.to_string()))?;
                p
            }
            RouteBody::Combined(vias) => {
                let h = self.need_hierarchy()?;
                if h.node_count() != n {
                    return Err(RouteError::Mismatch("hierarchy size differs from graph".into()));
                }
                decompress_combined(
                    h,
                    &self.engine,
                    &ViaRepr {
                        source: m.source,
                        target: m.target,
                        vias: vias.clone(),
                    },
                )?
            }
        };
        Ok(path)
    }
}
