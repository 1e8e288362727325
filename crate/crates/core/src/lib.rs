//! Exact computations around exterior powers of reflection representations.
//!
//! Given a representation by generator matrices whose generators act as
//! (generalized) reflections, this crate recognizes the reflection data,
//! builds every exterior power via compound matrices, and certifies that the
//! exterior powers are simple and pairwise non-isomorphic. All arithmetic is
//! exact, over `Q` or a real quadratic field.

pub mod catalog;
pub mod exterior;
pub mod field;
pub mod graphs;
pub mod linalg;
pub mod poly;
pub mod reflect;
pub mod repfile;
pub mod repkit;
pub mod report;
pub mod theoremlab;

pub use field::{Field, FieldError, Scalar};
pub use linalg::{Matrix, Subspace, Vector};
