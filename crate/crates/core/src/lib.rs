//! Symbolic differential geometry for coordinate pseudo-Riemannian metrics
//! whose components are exp-polynomials: Levi-Civita connection, curvature,
//! Ricci tensor, Lie derivatives, and an exact Ricci-soliton solver based on
//! coefficient matching over the parameter field.
//!
//! The crate is `no_std` and only needs `alloc`. Text formats, model files
//! and the command-line front end live in the `soliton-forge` crate.

#![no_std]
#![forbid(unsafe_code)]
// Tensor code reads best with explicit index loops.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod oracle;
pub mod soliton;

pub use error::{CatalogError, ContextError, EvalError, GeometryError, OracleError, SolitonError};
pub use expr::{ExpPoly, ExpTerm, ParamScalar, ParamValues, Poly, TermKey};
pub use geometry::SpaceModel;
