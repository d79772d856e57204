//! Exact computations with finite-dimensional Leibniz algebras and pairs:
//! Lie-centers, Lie-commutators, Lie-isoclinism certificates, stem
//! reduction and factor-set extensions, over the rationals or a prime field.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod exactla;
pub mod extension;
pub mod isoclinism;
pub mod pairs;

pub use error::{Error, Result};
