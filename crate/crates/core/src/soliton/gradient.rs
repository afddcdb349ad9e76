use crate::expr::ExpPoly;
use crate::geometry::{exterior_derivative, lower, SpaceModel, VectorField};

/// Whether `X♭` is closed. On the simply connected chart `ℝⁿ` closedness is
/// equivalent to `X = ∇f` for some potential `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradientVerdict {
    Gradient,
    /// First nonzero component `(dX♭)ᵢⱼ`, `i < j`.
    NotGradient {
        i: usize,
        j: usize,
        witness: ExpPoly,
    },
}

impl GradientVerdict {
    pub fn is_gradient(&self) -> bool {
        matches!(self, GradientVerdict::Gradient)
    }
}

/// Parameters in `X` are treated symbolically: `NotGradient` means no single
/// potential works identically in them.
pub fn gradient_check(model: &SpaceModel, x: &VectorField) -> GradientVerdict {
    let dw = exterior_derivative(model, &lower(model, x));
    match dw.first_nonzero() {
        None => GradientVerdict::Gradient,
        Some((i, j)) => GradientVerdict::NotGradient { i, j, witness: dw.0[i][j].clone() },
    }
}
