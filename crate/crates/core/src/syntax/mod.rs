//! Concrete syntax: lexer, parser and pretty printer.

pub mod ast;
mod lexer;
mod parser;
mod pretty;

pub use parser::{parse_expr, parse_program, parse_scheme, parse_type};
