//! Exact exp-polynomial arithmetic: the kernel every other module builds on.

pub mod exppoly;
pub mod poly;
pub mod scalar;

pub use exppoly::{ExpPoly, ExpTerm, TermKey};
pub use poly::Poly;
pub use scalar::{ParamScalar, ParamValues};
