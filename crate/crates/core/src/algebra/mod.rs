//! Free graded algebra over Z[u, u^-1] with noncommuting generators.

mod element;
mod laurent;
mod parse;
mod symbol;

pub use element::{Element, Word};
pub use laurent::LaurentPoly;
pub use parse::{parse_element, parse_lines, NamedElement};
pub use symbol::{Label, Symbol};

pub(crate) use laurent::mul_mod;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("replacement for {symbol} has degree {found}, expected {expected}")]
    DegreeMismatch { symbol: String, expected: u32, found: u32 },
    #[error("element is not homogeneous: {0}")]
    Inhomogeneous(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError { line, col, message: message.into() }
    }
}
