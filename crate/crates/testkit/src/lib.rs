//! Random generators and independent oracles for testing `cfst`.
//!
//! The oracles work directly on types, never on the grammars built by
//! `cfst_core::grammar`, so they can catch mistakes in the translation as
//! well as in the search.

pub mod gen;
pub mod oracle;

pub use gen::{Generator, Law};
pub use oracle::{gay_hole, k_bisimilar, transitions, Stack};
