//! Exact symbolic engine for polynomial symmetry algebras and their
//! infinite-dimensional representations.

pub mod coeffring;
pub mod freealg;
pub mod parser;
pub mod algebras;
pub mod repspace;
pub mod realization;
pub mod sequences;
pub mod findings;
pub mod report;
pub mod cli;
