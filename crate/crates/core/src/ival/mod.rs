//! Outward-rounded interval arithmetic and verified dense eigenvalue
//! enclosures.

mod eig;
mod elementary;
mod interval;
mod matrix;
mod root;
pub mod round;

pub use eig::{
    gen_vectors, lambda_min_lower, verified_gen_eig, verified_gen_eig_vectors, verified_sym_eig,
    verified_sym_eig_vectors, EigEnclosure,
};
pub use elementary::{iv_arith, ln2_enclosure, pi_enclosure, Op};
pub use interval::Interval;
pub use matrix::{dot, norm_upper, IntervalMatrix};
pub use root::{bisect_root, sign_of, Sign};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("division by an interval containing zero: [{lo}, {hi}]")]
    DivisionByZero { lo: f64, hi: f64 },
    #[error("square root of an interval with negative part (lower end {lo})")]
    SqrtOfNegative { lo: f64 },
    #[error("invalid interval bounds [{lo}, {hi}]")]
    InvalidBounds { lo: f64, hi: f64 },
    #[error("result overflows the floating point range")]
    Overflow,
    #[error("binary operation is missing its second operand")]
    MissingOperand,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not exactly symmetric")]
    NotSymmetric,
    #[error("matrix dimensions do not agree")]
    DimensionMismatch,
    #[error("matrix is not verifiably positive definite")]
    NotPositiveDefinite,
    #[error("approximate diagonalization too inaccurate (orthogonality defect {defect})")]
    VerificationFailed { defect: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("no certified sign change on the bracket")]
    NoSignChange,
    #[error("sign undecidable before reaching tolerance; best bracket {best}")]
    StalledBeforeTol { best: Interval },
}
