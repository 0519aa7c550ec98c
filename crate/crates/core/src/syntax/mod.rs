//! Concrete syntax: formula AST, parser, formatter and specification files.

mod ast;
mod format;
mod lexer;
mod parser;
mod spec;

use std::collections::BTreeSet;

pub use ast::{Comparison, Direction, Formula, Predicate, Term};
pub use format::{format_formula, format_term};
pub use parser::is_keyword;
pub use spec::{parse_specification, Declaration, Role, SpecError, Specification, Unit};

/// Parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError { line, column, message: message.into() }
    }
}

/// Parses a formula whose variables must all be in `declared`.
pub fn parse_formula(text: &str, declared: &BTreeSet<String>) -> Result<Formula, SyntaxError> {
    parser::Parser::new(text, Some(declared))?.parse_complete()
}

impl std::str::FromStr for Formula {
    type Err = SyntaxError;

    /// Parses without checking variable declarations.
    fn from_str(text: &str) -> Result<Formula, SyntaxError> {
        parser::Parser::new(text, None)?.parse_complete()
    }
}
