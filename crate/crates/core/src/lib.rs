//! Guaranteed eigenvalue enclosures for self-adjoint operators.
//!
//! All bounds are computed in outward-rounded interval arithmetic.

pub mod cli;
pub mod enclosure;
pub mod forms;
pub mod graphenclose;
pub mod ival;
pub mod slenclose;
