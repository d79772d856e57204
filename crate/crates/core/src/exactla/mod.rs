//! Exact linear algebra over `Q` and `GF(p)`.
//!
//! Every subspace is kept in reduced row echelon form, so equality of
//! subspaces is equality of their stored bases.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{rref, rref_checked, solve, Matrix, Solution, Vector};
pub use scalar::{Field, Scalar};
pub use subspace::{all_subspaces, complement, complement_basis, QuotientSpace, Subspace};
