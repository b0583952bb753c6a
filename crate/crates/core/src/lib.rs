//! Compact route descriptions for weighted road graphs.
//!
//! A route (a path in a directed graph with positive integer weights) can be
//! compressed by
//!
//! * keeping only the *via edges* that break uniqueness of shortest paths
//!   ([`via`]), optionally after splitting tied edges so plain *via nodes*
//!   suffice ([`split`]);
//! * replacing subpaths by contraction-hierarchy shortcuts ([`ch`]);
//! * combining both.
//!
//! [`codec`] turns any of these into a small byte message and [`route`]
//! ties compression, encoding and reconstruction together.
//!
//! All algorithms are generic over the weight type (any unsigned primitive
//! integer, see [`weight::Weight`]). The aliases below fix it to `u64`.

pub mod error;
pub mod graph;
pub mod weight;
pub mod dimacs;
pub mod sp;
pub mod via;
pub mod split;
pub mod ch;
pub mod codec;
pub mod route;
pub mod synth;

pub use ch::{BuildParams, ChEdge, ChPath, CombinedRepr};
pub use codec::{decode, encode, Method, RouteBody, RouteMessage};
pub use error::{ChError, CodecError, DimacsError, GraphError, SpError, ViaError};
pub use graph::{concat, path_cost, validate_path, EdgeRef, NodeId, Path, PathViolation};
pub use route::{RouteContext, RouteError, Scheme};
pub use sp::Multiplicity;
pub use split::SplitMapping;
pub use via::{PrefixSearch, ViaEdgeRepr, ViaNodeRepr, ViaRepr};

/// Default weight type.
pub type Weight = u64;
pub type Graph = graph::Graph<Weight>;
pub type Cost = weight::Cost<Weight>;
pub type SpEngine<'g> = sp::SpEngine<'g, Weight>;
pub type SpResult = sp::SpResult<Weight>;
pub type Hierarchy = ch::Hierarchy<Weight>;
