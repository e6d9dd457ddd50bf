//! Exact arithmetic in GF(p^m) and the linear algebra kernels built on it.

pub mod field;
pub mod linalg;
pub mod poly;

pub use field::{is_prime, Elem, FieldElement, FieldSpec};
pub use linalg::{rank, rank_nullspace, rref, DenseSpan, Eliminator, SparseMatrix};
