use alloc::vec::Vec;

use super::SpaceModel;
use crate::error::GeometryError;
use crate::expr::ExpPoly;

fn minor(m: &[Vec<ExpPoly>], row: usize, col: usize) -> Vec<Vec<ExpPoly>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, e)| e.clone()).collect())
        .collect()
}

fn det_rec(m: &[Vec<ExpPoly>], ncoords: usize, nparams: usize) -> ExpPoly {
    match m.len() {
        0 => ExpPoly::one(ncoords, nparams),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = ExpPoly::zero(ncoords, nparams);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let t = &m[0][j] * &det_rec(&minor(m, 0, j), ncoords, nparams);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// Exact determinant by cofactor expansion.
pub fn determinant(model: &SpaceModel) -> ExpPoly {
    det_rec(model.metric(), model.dim(), model.nparams())
}

/// `g⁻¹ = adj(g) / det(g)`, available when `det(g)` is a unit of the
/// exp-polynomial ring (a single term `c·exp(⟨f, x⟩)` with `c` invertible).
pub fn inverse_metric(model: &SpaceModel) -> Result<Vec<Vec<ExpPoly>>, GeometryError> {
    let det = determinant(model);
    let det_inv = det.inverse_unit().ok_or(GeometryError::NonMonomialDeterminant { terms: det.terms().len() })?;
    let n = model.dim();
    let g = model.metric();
    let mut inv = alloc::vec![alloc::vec![model.zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            // (g⁻¹)_{ij} = (−1)^{i+j} det(minor_{ji}) / det
            let c = det_rec(&minor(g, j, i), n, model.nparams());
            let c = if (i + j) % 2 == 0 { c } else { -c };
            let e = &c * &det_inv;
            inv[j][i] = e.clone();
            inv[i][j] = e;
        }
    }
    Ok(inv)
}
