//! Batch commands over Leibniz algebras, pairs, isoclinism certificates and
//! factor sets. Every command writes deterministic plain text and exits
//! with 0 on success, 1 on a mathematical negative and 2 on bad input.

pub mod commands;
pub mod format;

pub use commands::{run, Cli, Outcome};
