//! Rainbow matchings in properly edge-coloured graphs.
//!
//! A rainbow matching uses each colour at most once. For a graph with
//! minimum degree `delta`, the crate searches for rainbow matchings of size
//! `delta` exactly ([`solver`]) and by local augmentation ([`engine`]),
//! audits states where augmentation stalls ([`audit`]), and connects
//! `K_{n,n}` colourings to Latin squares ([`latin`]).

pub mod audit;
pub mod engine;
pub mod generate;
pub mod graph;
pub mod io;
pub mod latin;
pub mod result;
pub mod solver;

pub use engine::{run_engine, EngineOptions};
pub use graph::{
    bound_n, is_rainbow_matching, Colour, Edge, EdgeColoredGraph, EdgeId, GraphError, Matching,
    VertexId,
};
pub use result::{RuleId, SolveResult, TraceEvent};
pub use solver::{max_rainbow_matching, rainbow_matching_at_least, SolverOptions};
