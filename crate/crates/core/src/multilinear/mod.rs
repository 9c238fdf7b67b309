//! Reduced multivariate polynomials over `F_p` (multilinear over `F_2`),
//! their monomial indexing, and linear spaces of them.

mod index;
mod poly;
mod space;

pub use index::{Monomial, MonomialIndex};
pub use poly::{reduce, substitution_matrix, MultilinearPoly, Term};
pub use space::PolySpace;

use thiserror::Error;

use crate::field::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultilinearError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("affine map is singular")]
    SingularMap,
    #[error("{p}^{m} points do not fit the monomial encoding")]
    TooManyVariables { m: usize, p: u64 },
    #[error("monomial is not in the index")]
    MonomialOutOfRange,
    #[error("cannot restrict a polynomial in zero variables")]
    NoVariables,
    #[error(transparent)]
    Field(#[from] FieldError),
}
