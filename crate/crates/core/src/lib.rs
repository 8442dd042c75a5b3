//! Twisted cube `TQ_n` toolkit.
//!
//! * [`topology`]: labels, parity, neighbors and edges of `TQ_n` (odd `n`).
//! * [`construction`]: two edge-disjoint Hamiltonian cycles (odd `n >= 5`)
//!   and two equal node-disjoint cycles (odd `n >= 3`), materialized or
//!   streamed.
//! * [`verification`]: checkers with witnesses, graph statistics and a
//!   brute-force oracle for `n <= 5`.
//! * [`broadcast`]: ring all-to-all broadcast simulation with per-link loads.
//! * [`io`]: node strings, edge lists, DOT, cycle documents.

pub mod broadcast;
pub mod construction;
pub mod error;
pub mod io;
pub mod topology;
mod util;
pub mod verification;

pub use construction::{
    concat, edh_base, edh_cycles, edh_paths, endpoint_spec, ndc_base, ndc_cycles, ndc_paths,
    path_stream, reverse_path, ConstructionKind, Cycle, EndpointSpec, Path, Route, Which,
};
pub use error::{Error, Result};
pub use topology::{
    edge_stream, is_adjacent, neighbors, parity, subcube_of, Dimension, Edge, NodeCap, NodeLabel,
    Quadrant,
};
