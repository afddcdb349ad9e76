//! The Ricci-soliton equation `L_X g + ρ = λ g`: residuals, verification,
//! an exact solver over a finite ansatz, and the gradient test.

mod ansatz;
mod gradient;
pub mod linear;
mod solve;
mod span;
mod system;

use crate::error::{EvalError, SolitonError};
use crate::expr::{ParamScalar, ParamValues};
use crate::geometry::{lie_derivative_metric, Curvature, SpaceModel, SymTensor, VectorField};

pub use ansatz::{
    ansatz_frequencies, ansatz_with, default_ansatz, monomials, Ansatz, BasisFunction, LambdaMode, DEFAULT_DEGREE,
    DEFAULT_FREQ_DEPTH,
};
pub use gradient::{gradient_check, GradientVerdict};
pub use solve::{solve, Certificate, Direction, SolitonSolution, SolveOutcome};
pub use span::{express_in_span, AffineFamily};
pub use system::{assemble_system, assemble_with_curvature, slot_coefficient, LinearSystem, RowOrigin};

/// `L_X g + ρ − λ g` with a precomputed Ricci tensor.
pub fn residual_with_ricci(model: &SpaceModel, ricci: &SymTensor, x: &VectorField, lambda: &ParamScalar) -> SymTensor {
    let g = SymTensor::metric(model);
    lie_derivative_metric(model, x).add(ricci).sub(&g.scale(lambda))
}

/// `L_X g + ρ − λ g`; zero exactly when `(g, X, λ)` is a Ricci soliton.
pub fn residual(model: &SpaceModel, x: &VectorField, lambda: &ParamScalar) -> Result<SymTensor, SolitonError> {
    if x.dim() != model.dim() {
        return Err(crate::error::GeometryError::DimensionMismatch { expected: model.dim(), found: x.dim() }.into());
    }
    let curv = Curvature::compute(model)?;
    Ok(residual_with_ricci(model, &curv.ricci, x, lambda))
}

/// Outcome of [`verify`]; the residual is kept for reporting.
#[derive(Clone, Debug)]
pub struct Verification {
    pub holds: bool,
    pub residual: SymTensor,
}

pub fn verify(model: &SpaceModel, x: &VectorField, lambda: &ParamScalar) -> Result<Verification, SolitonError> {
    let residual = residual(model, x, lambda)?;
    Ok(Verification { holds: residual.is_zero(), residual })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolitonKind {
    Shrinking,
    Steady,
    Expanding,
}

impl SolitonKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SolitonKind::Shrinking => "shrinking",
            SolitonKind::Steady => "steady",
            SolitonKind::Expanding => "expanding",
        }
    }
}

/// Shrinking, steady or expanding as λ is positive, zero or negative under
/// the assignment.
pub fn classify(lambda: &ParamScalar, params: &ParamValues) -> Result<SolitonKind, EvalError> {
    if lambda.is_zero() {
        return Ok(SolitonKind::Steady);
    }
    let v = lambda.eval(params)?;
    Ok(if v > 0.0 {
        SolitonKind::Shrinking
    } else if v < 0.0 {
        SolitonKind::Expanding
    } else {
        SolitonKind::Steady
    })
}
