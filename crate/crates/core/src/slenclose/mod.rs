//! Sturm–Liouville eigenvalue enclosures by Neumann decoupling.
//!
//! The interval is cut into `2^N` cells. On each cell the coefficients are
//! frozen at their extremes, which gives crude disjoint enclosures. Adjacent
//! operators are then rejoined pairwise: the eigenvalues of the joined
//! operator interlace the merged eigenvalues of the two halves, which brackets
//! them roughly, and Rayleigh–Ritz plus Temple–Lehmann bounds make the
//! brackets accurate. Each level works to a slightly lower ceiling so that
//! there is always a gap above the eigenvalues being refined.

pub(crate) mod basis;
mod coeff;
mod crude;
mod driver;
mod gram;
pub(crate) mod legendre;
mod merge;
mod partition;
mod problem;
mod rrtl;

pub use basis::{Basis, BasisFn};
pub use coeff::{CoefficientFn, Piece, Scale, TaylorModel, Term, TrigKind};
pub use crude::crude_enclosure;
pub use driver::{
    effort_report, hierarchical_enclose, EffortReport, EncloseConfig, HaltReport, NodeRecord,
    SlRun,
};
pub use gram::{assemble_gram, GramTriple};
pub use merge::merge_interlace;
pub use partition::{
    adaptive_bisection_point, build_tree, tree_partition, uniform_partition, Node, Partition,
};
pub use problem::{Bc, BoundaryCondition, Schedule, SlProblem};
pub use rrtl::{lehmann_block, lehmann_lower, ritz_vectors, rr_upper, temple_lower, RitzSpace};

use thiserror::Error;

use crate::ival::EigError;

#[derive(Debug, Error)]
pub enum SlError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("coefficient a is not verifiably positive (lower bound {lower})")]
    NonPositiveA { lower: f64 },
    #[error("crude bounds on [{}, {}] overlap at index {index}", cell.0, cell.1)]
    NotDisjoint { cell: (f64, f64), index: usize },
    #[error("no disjoint subdivision up to level {max_level}")]
    DepthExceeded { max_level: u32 },
    #[error("Gram matrix of the basis is not verifiably positive definite")]
    BasisDegenerate,
    #[error("shift {rho} does not verifiably exceed the Rayleigh quotient {q_hi}")]
    GapViolated { q_hi: f64, rho: f64 },
    #[error("matrix is not verifiably positive definite")]
    NotPositiveDefinite,
    #[error("basis has {dim} functions, {needed} needed")]
    BasisTooSmall { dim: usize, needed: usize },
    #[error(transparent)]
    Eig(#[from] EigError),
    #[error("{0}")]
    Halted(Box<HaltReport>),
}
