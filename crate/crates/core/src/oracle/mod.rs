//! Brute-force PCG recognition for small graphs.
//!
//! Every unrooted binary tree shape over the vertex set is tried in turn.
//! For each shape the edge weights and window are unknowns of a linear
//! system; non-edges must fall below or above the window, and the search
//! branches over those choices. Binary shapes lose nothing, since a
//! higher-degree vertex can be split with zero-weight edges.

pub mod fourier_motzkin;
pub mod lp;
mod search;
mod topology;

use std::time::Duration;

use thiserror::Error;

use crate::pcr::Pcr;

pub use search::{exact_search, solve_topology, FeasibilitySystem};
pub use topology::{enumerate_topologies, topology_count, Topology, TopologyIter};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the empty graph has no representation")]
    EmptyGraph,
    #[error("topology has {leaves} leaves but the graph has {vertices} vertices")]
    LeafMismatch { leaves: usize, vertices: usize },
    #[error("solver produced a witness that does not verify")]
    Unsound,
    #[error("could not start worker threads: {0}")]
    Threads(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    pub max_n: usize,
    pub max_topologies: Option<u64>,
    pub time_limit: Option<Duration>,
    pub jobs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_n: 6,
            max_topologies: None,
            time_limit: None,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Pcg { witness: Pcr, topology_index: u64 },
    NonPcg { topologies: u64 },
    Inconclusive { reason: String, explored: u64 },
}
