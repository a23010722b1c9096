//! Eigenvalue enclosures for Laplacians of finite weighted graphs.
//!
//! Three routes are provided. An edge-removal chain transfers enclosures
//! from a graph to the graph with a few edges cut, one rank-one step at a
//! time. An edge-weight homotopy joins two graphs whose spectra are known
//! by scaling the joining edges from 0 to 1. A hierarchical partition joins
//! many parts this way, needing only a lower bound on each part's spectral
//! gap, which path-congestion (Poincaré) bounds supply.

mod certify;
mod chain;
mod graph;
mod homotopy;
mod partition;
mod poincare;

pub use chain::edge_chain_enclose;
pub use graph::{laplacian, Edge, Graph};
pub use homotopy::{homotopy_enclose, Bridge, HomotopyRun, HomotopySchedule, Stage};
pub use partition::{partition_enclose, PartTree, PartitionRun};
pub use poincare::{geodesic_paths, poincare_bound, staircase_paths, PathFamily, PoincareBound, Staircase};

use std::fmt;

use thiserror::Error;

use crate::enclosure::EnclosureList;
use crate::ival::{EigError, Interval};

/// Settings shared by the chain, homotopy and partition drivers.
#[derive(Clone, Debug)]
pub struct GraphOptions {
    /// Number of eigenvalues required; all of them when `None`.
    pub count: Option<usize>,
    /// Largest acceptable enclosure width.
    pub tolerance: f64,
    /// Entries whose upper bound reaches this value need not meet the
    /// tolerance.
    pub ceiling: f64,
    /// Homotopy steps allowed, including bisections.
    pub max_steps: usize,
}

impl Default for GraphOptions {
    fn default() -> Self {
        Self { count: None, tolerance: 1e-5, ceiling: f64::INFINITY, max_steps: 32 }
    }
}

/// Where a chain or homotopy stopped, with the lists certified so far.
#[derive(Clone, Debug)]
pub struct GraphHalt {
    /// Step (chain index or stage number) that failed.
    pub step: usize,
    /// First eigenvalue index left unresolved.
    pub index: usize,
    pub bounds: Interval,
    /// Every list is still a valid enclosure; the last is the failed step.
    pub partial: Vec<EnclosureList>,
}

impl fmt::Display for GraphHalt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "halted at step {}: eigenvalue {} only enclosed in [{:e}, {:e}]",
            self.step,
            self.index,
            self.bounds.lo(),
            self.bounds.hi()
        )
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(usize, usize),
    #[error("schedule {0:?} is not increasing from 0 to 1")]
    InvalidSchedule(Vec<f64>),
    #[error("part {part} is not certified: {detail}")]
    ClassViolation { part: usize, detail: String },
    #[error("no path from {from} to {to}")]
    IncompleteFamily { from: usize, to: usize },
    #[error("path from {from} to {to} is not a walk in the graph")]
    DisconnectedPath { from: usize, to: usize },
    #[error("column heights decrease at column {index}")]
    NotMonotone { index: usize },
    #[error("bounds for eigenvalue {index} cross: {lower} > {upper}")]
    Inconsistent { index: usize, lower: f64, upper: f64 },
    #[error(transparent)]
    Eig(#[from] EigError),
    #[error(transparent)]
    Bounds(#[from] crate::slenclose::SlError),
    #[error("{0}")]
    Halted(Box<GraphHalt>),
}
