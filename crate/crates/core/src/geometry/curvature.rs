use alloc::vec::Vec;

use super::{inverse_metric, SpaceModel, SymTensor};
use crate::error::GeometryError;
use crate::expr::{ExpPoly, ParamScalar};

/// Christoffel symbols of the Levi-Civita connection, `gamma[k][i][j] = Γᵏᵢⱼ`
/// with `∇_{∂ᵢ}∂ⱼ = Σₖ Γᵏᵢⱼ ∂ₖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub gamma: Vec<Vec<Vec<ExpPoly>>>,
}

impl Connection {
    pub fn get(&self, k: usize, i: usize, j: usize) -> &ExpPoly {
        &self.gamma[k][i][j]
    }

    pub fn dim(&self) -> usize {
        self.gamma.len()
    }
}

/// The curvature endomorphisms `R(∂ᵢ, ∂ⱼ)` as matrices: `slices[i][j][l][k]`
/// is the `∂ₗ`-component of `R(∂ᵢ, ∂ⱼ)∂ₖ` (row `l`, column `k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureSlices {
    pub slices: Vec<Vec<Vec<Vec<ExpPoly>>>>,
}

impl CurvatureSlices {
    pub fn entry(&self, i: usize, j: usize, l: usize, k: usize) -> &ExpPoly {
        &self.slices[i][j][l][k]
    }

    pub fn matrix(&self, i: usize, j: usize) -> &[Vec<ExpPoly>] {
        &self.slices[i][j]
    }
}

/// Everything `curvature` reports for a model, computed once.
#[derive(Clone, Debug)]
pub struct Curvature {
    pub inverse: Vec<Vec<ExpPoly>>,
    pub connection: Connection,
    pub riemann: CurvatureSlices,
    pub ricci: SymTensor,
    pub scalar: ExpPoly,
}

impl Curvature {
    pub fn compute(model: &SpaceModel) -> Result<Curvature, GeometryError> {
        let inverse = inverse_metric(model)?;
        let connection = christoffel(model, &inverse);
        let riemann = riemann(model, &connection);
        let ricci = ricci(model, &riemann)?;
        let scalar = scalar_curvature(model, &inverse, &ricci);
        Ok(Curvature { inverse, connection, riemann, ricci, scalar })
    }
}

/// `Γᵏᵢⱼ = ½ gᵏˡ (∂ᵢ gⱼₗ + ∂ⱼ gᵢₗ − ∂ₗ gᵢⱼ)`.
pub fn christoffel(model: &SpaceModel, inverse: &[Vec<ExpPoly>]) -> Connection {
    let n = model.dim();
    let g = model.metric();
    // dg[l][i][j] = ∂ₗ gᵢⱼ
    let dg: Vec<Vec<Vec<ExpPoly>>> =
        (0..n).map(|l| (0..n).map(|i| (0..n).map(|j| g[i][j].diff(l)).collect()).collect()).collect();
    let half = ParamScalar::from_ratio(model.nparams(), 1, 2);
    // first kind: c[i][j][l] = ½(∂ᵢ gⱼₗ + ∂ⱼ gᵢₗ − ∂ₗ gᵢⱼ)
    let mut gamma = alloc::vec![alloc::vec![alloc::vec![model.zero(); n]; n]; n];
    for i in 0..n {
        for j in i..n {
            let first: Vec<ExpPoly> =
                (0..n).map(|l| (&(&dg[i][j][l] + &dg[j][i][l]) - &dg[l][i][j]).scale(&half)).collect();
            for (k, gk) in gamma.iter_mut().enumerate() {
                let mut acc = model.zero();
                for l in 0..n {
                    if inverse[k][l].is_zero() || first[l].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&inverse[k][l] * &first[l]);
                }
                gk[j][i] = acc.clone();
                gk[i][j] = acc;
            }
        }
    }
    Connection { gamma }
}

/// `(R_{ij})ˡₖ = ∂ᵢΓˡⱼₖ − ∂ⱼΓˡᵢₖ + Γˡᵢₘ Γᵐⱼₖ − Γˡⱼₘ Γᵐᵢₖ`.
///
/// Only `i < j` is computed; the diagonal is zero and `i > j` is mirrored
/// with a sign.
pub fn riemann(model: &SpaceModel, conn: &Connection) -> CurvatureSlices {
    let n = model.dim();
    let gm = &conn.gamma;
    let zero_mat = alloc::vec![alloc::vec![model.zero(); n]; n];
    let mut slices = alloc::vec![alloc::vec![zero_mat; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let mut m = alloc::vec![alloc::vec![model.zero(); n]; n];
            for (l, row) in m.iter_mut().enumerate() {
                for (k, cell) in row.iter_mut().enumerate() {
                    let mut acc = &gm[l][j][k].diff(i) - &gm[l][i][k].diff(j);
                    for mm in 0..n {
                        if !gm[l][i][mm].is_zero() && !gm[mm][j][k].is_zero() {
                            acc = &acc + &(&gm[l][i][mm] * &gm[mm][j][k]);
                        }
                        if !gm[l][j][mm].is_zero() && !gm[mm][i][k].is_zero() {
                            acc = &acc - &(&gm[l][j][mm] * &gm[mm][i][k]);
                        }
                    }
                    *cell = acc;
                }
            }
            slices[j][i] = m.iter().map(|r| r.iter().map(|e| -e).collect()).collect();
            slices[i][j] = m;
        }
    }
    CurvatureSlices { slices }
}

/// `ρⱼₖ = Σᵢ (R_{ij})ⁱₖ`. The result is checked for exact symmetry, which
/// holds for any Levi-Civita connection; a failure signals a kernel bug.
pub fn ricci(model: &SpaceModel, r: &CurvatureSlices) -> Result<SymTensor, GeometryError> {
    let n = model.dim();
    let mut rho = alloc::vec![alloc::vec![model.zero(); n]; n];
    for (j, row) in rho.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            let mut acc = model.zero();
            for i in 0..n {
                acc = &acc + r.entry(i, j, i, k);
            }
            *cell = acc;
        }
    }
    for i in 0..n {
        for j in 0..i {
            if rho[i][j] != rho[j][i] {
                return Err(GeometryError::AsymmetryDetected { i: j, j: i });
            }
        }
    }
    Ok(SymTensor(rho))
}

/// `τ = gʲᵏ ρⱼₖ`.
pub fn scalar_curvature(model: &SpaceModel, inverse: &[Vec<ExpPoly>], rho: &SymTensor) -> ExpPoly {
    let n = model.dim();
    let mut acc = model.zero();
    for j in 0..n {
        for k in 0..n {
            if !inverse[j][k].is_zero() && !rho.0[j][k].is_zero() {
                acc = &acc + &(&inverse[j][k] * &rho.0[j][k]);
            }
        }
    }
    acc
}
