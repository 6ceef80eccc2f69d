//! Command line and threaded runtime for the `cfst` language. Parsing,
//! kinding, type equivalence and type checking live in `cfst_core`.

pub mod cli;
pub mod runtime;

pub use cli::main_entry;
