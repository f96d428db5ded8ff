//! Exact linear algebra over the rationals and prime fields.

mod matrix;
mod scalar;
mod span;

pub use matrix::{kernel_basis, rank, solve_membership, Matrix, Membership};
pub use scalar::{Field, FieldError, Scalar};
pub use span::{Reduction, Span};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
