use alloc::vec::Vec;

use super::{OneForm, SpaceModel, SymTensor, TwoForm, VectorField};
use crate::expr::ExpPoly;

/// `(L_X g)ᵢⱼ = Xᵏ ∂ₖ gᵢⱼ + gₖⱼ ∂ᵢ Xᵏ + gᵢₖ ∂ⱼ Xᵏ`.
pub fn lie_derivative_metric(model: &SpaceModel, x: &VectorField) -> SymTensor {
    let n = model.dim();
    let g = model.metric();
    // dx[i][k] = ∂ᵢ Xᵏ
    let dx: Vec<Vec<ExpPoly>> = (0..n).map(|i| x.0.iter().map(|c| c.diff(i)).collect()).collect();
    let mut out = alloc::vec![alloc::vec![model.zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut acc = model.zero();
            for k in 0..n {
                if !x.0[k].is_zero() {
                    let d = g[i][j].diff(k);
                    if !d.is_zero() {
                        acc = &acc + &(&x.0[k] * &d);
                    }
                }
                if !g[k][j].is_zero() && !dx[i][k].is_zero() {
                    acc = &acc + &(&g[k][j] * &dx[i][k]);
                }
                if !g[i][k].is_zero() && !dx[j][k].is_zero() {
                    acc = &acc + &(&g[i][k] * &dx[j][k]);
                }
            }
            out[j][i] = acc.clone();
            out[i][j] = acc;
        }
    }
    SymTensor(out)
}

/// Metric dual `ωⱼ = gᵢⱼ Xⁱ`.
pub fn lower(model: &SpaceModel, x: &VectorField) -> OneForm {
    let n = model.dim();
    let g = model.metric();
    OneForm(
        (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| !g[i][j].is_zero() && !x.0[i].is_zero())
                    .fold(model.zero(), |acc, i| &acc + &(&g[i][j] * &x.0[i]))
            })
            .collect(),
    )
}

/// `(dω)ᵢⱼ = ∂ᵢ ωⱼ − ∂ⱼ ωᵢ`.
pub fn exterior_derivative(model: &SpaceModel, w: &OneForm) -> TwoForm {
    let n = model.dim();
    let mut out = alloc::vec![alloc::vec![model.zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let e = &w.0[j].diff(i) - &w.0[i].diff(j);
            out[j][i] = -&e;
            out[i][j] = e;
        }
    }
    TwoForm(out)
}

/// `∇f = gⁱʲ ∂ⱼ f ∂ᵢ`, given the inverse metric.
pub fn gradient(model: &SpaceModel, inverse: &[Vec<ExpPoly>], f: &ExpPoly) -> VectorField {
    let n = model.dim();
    let df: Vec<ExpPoly> = (0..n).map(|j| f.diff(j)).collect();
    VectorField(
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| !inverse[i][j].is_zero() && !df[j].is_zero())
                    .fold(model.zero(), |acc, j| &acc + &(&inverse[i][j] * &df[j]))
            })
            .collect(),
    )
}
