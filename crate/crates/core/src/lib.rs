//! Core of the `cfst` toolchain: a small linear functional language whose
//! channels are governed by context-free session types.
//!
//! The crate is `no_std` (it only needs `alloc`) and contains everything that
//! is pure computation:
//!
//! * [`syntax`]: abstract syntax, lexer, parser and pretty printer;
//! * [`kinds`]: the four-point kind lattice, kind synthesis, contractivity;
//! * [`dual`]: duality of session types;
//! * [`grammar`]: translation of session types into deterministic grammars in
//!   Greibach normal form, norms and pruning;
//! * [`equiv`]: bisimilarity of grammar words via an expansion tree, and the
//!   resulting type equivalence;
//! * [`typecheck`]: algorithmic linear type checking of programs.
//!
//! IO, threads and the command line live in the `cfst` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod diagnostic;
pub mod dual;
pub mod equiv;
pub mod grammar;
pub mod kinds;
pub mod syntax;
pub mod typecheck;

pub use diagnostic::{Diagnostic, Severity};
pub use syntax::ast::{
    BasicType, Expr, ExprKind, Kind, Literal, Multiplicity, Polarity, PreKind, Program, Scheme,
    Type, View,
};
pub use syntax::{parse_program, parse_type};
