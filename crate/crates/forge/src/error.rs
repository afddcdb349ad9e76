use std::fmt;

use thiserror::Error;

/// 1-based line and column of a diagnostic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Location {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("exponent of exp() is not a rational linear form in the coordinates: {0}")]
    NonRationalFrequency(String),
    #[error("division by `{0}`, which is not invertible in the expression class")]
    DivisionByNonUnit(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("`{0}` is declared twice")]
    DuplicateName(String),
    #[error("entry `{0}` is given twice")]
    DuplicateEntry(String),
    #[error("missing `{0}`")]
    Missing(String),
    #[error("differential `{0}` outside a line_element block")]
    DifferentialOutsideLineElement(String),
    #[error("line element term has differential degree {0}; every term must be quadratic")]
    NotQuadratic(usize),
    #[error("constraint `{constraint}` is not allowed on `{name}`")]
    BadConstraint { name: String, constraint: String },
    #[error("expected a constant, found an expression depending on `{0}`")]
    NotConstant(String),
    #[error("invalid metric: {0}")]
    Metric(String),
}

/// Every parse failure carries the location of the offending token.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{loc}: {kind}")]
pub struct ParseError {
    pub loc: Location,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(loc: Location, kind: ParseErrorKind) -> Self {
        ParseError { loc, kind }
    }

    pub fn syntax(loc: Location, msg: impl Into<String>) -> Self {
        ParseError { loc, kind: ParseErrorKind::Syntax(msg.into()) }
    }
}
