//! Text front end for `soliton-core`: the expression grammar, model files,
//! canonical formatting, and the `soliton-forge` command line.

pub mod cli;
pub mod error;
pub mod eval;
pub mod format;
pub mod lexer;
pub mod model;
pub mod parser;
pub mod report;
pub mod resolve;

pub use error::{Location, ParseError, ParseErrorKind};
pub use eval::{parse_expr, parse_scalar, Scope};
pub use format::{format_expoly, format_scalar};
pub use model::{format_model, model_hash, parse_model, ModelDocument};
