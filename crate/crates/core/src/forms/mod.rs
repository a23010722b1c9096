//! Eigenvalues of quadratic forms restricted to subspaces of finite
//! codimension, and a coupled two-component system on an interval whose
//! operators form such a chain.
//!
//! Removing one constraint at a time, the eigenvalues interlace:
//! `λⱼ ≤ μⱼ ≤ λⱼ₊₁` when `μ` belongs to the restriction.

mod chain;
mod discrete;
mod system;

pub use chain::{chain_eigen_lists, interlaces, FormChain};
pub use discrete::{system_form_chain, system_gram};
pub use system::{system_fixture_lists, SystemFixture, SystemLists};

use thiserror::Error;

use crate::ival::{EigError, RootError};
use crate::slenclose::SlError;

#[derive(Debug, Error)]
pub enum FormsError {
    #[error("invalid form chain: {0}")]
    InvalidChain(String),
    #[error("constraint {index} depends on the previous ones")]
    DependentConstraints { index: usize },
    #[error("eigenvalue {index} at step {step} violates interlacing")]
    NotInterlacing { step: usize, index: usize },
    #[error("invalid fixture: {0}")]
    InvalidFixture(String),
    #[error(transparent)]
    Eig(#[from] EigError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Bounds(#[from] SlError),
}
