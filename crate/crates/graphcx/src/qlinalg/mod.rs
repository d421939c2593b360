//! Exact rational arithmetic and sparse linear algebra over the rationals.

mod rational;
mod sparse;

pub use rational::{primitive_integer_vector, ParseRationalError, Rational};
pub use sparse::{
    cohomology_dim, compress, kernel_basis, rank, rank_of_rows, rref, Echelon, SparseMat, SparseVec,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("composition of consecutive differentials is nonzero ({nnz} nonzero entries)")]
    CompositionNonzero { nnz: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("malformed matrix dump line: {0:?}")]
    Parse(String),
}
