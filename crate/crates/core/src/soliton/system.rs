use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::ansatz::{Ansatz, LambdaMode};
use super::linear::SparseRow;
use super::residual_with_ricci;
use crate::error::SolitonError;
use crate::expr::{ParamScalar, TermKey};
use crate::geometry::{lie_derivative_metric, Curvature, SpaceModel, SymTensor, VectorField};

/// Where a row of the system came from: the coefficient of `key` in the
/// residual slot `(i, j)`, `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RowOrigin {
    pub i: usize,
    pub j: usize,
    pub key: TermKey,
}

/// The linear system `A·u = b` obtained by coefficient matching.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub ansatz: Ansatz,
    pub nparams: usize,
    pub rows: Vec<SparseRow>,
    pub origins: Vec<RowOrigin>,
}

impl LinearSystem {
    pub fn ncols(&self) -> usize {
        self.ansatz.ncols()
    }
}

/// Sparse row coefficients and right-hand side, keyed by where the row came from.
type RowAcc = BTreeMap<RowOrigin, (Vec<(usize, ParamScalar)>, ParamScalar)>;

fn add_tensor(acc: &mut RowAcc, t: &SymTensor, col: Option<usize>, sign: &ParamScalar, nparams: usize) {
    let n = t.dim();
    for i in 0..n {
        for j in i..n {
            for term in t.0[i][j].terms() {
                let origin = RowOrigin { i, j, key: term.key.clone() };
                let entry = acc.entry(origin).or_insert_with(|| (Vec::new(), ParamScalar::zero(nparams)));
                let v = sign * &term.coeff;
                match col {
                    Some(c) => entry.0.push((c, v)),
                    None => entry.1 = &entry.1 + &v,
                }
            }
        }
    }
}

/// Substitutes the ansatz into `L_X g + ρ − λ g` and collects the
/// coefficient of every `(slot, key)` into one row.
///
/// Column `c` contributes `L_{φ_c ∂_k} g`, the λ column contributes `−g`, and
/// the right-hand side is `−ρ` (plus `λ g` when λ is pinned). Superposition
/// is checked against one direct evaluation of the residual with every
/// unknown set to 1; a mismatch is reported as `NonAffineResidual`.
pub fn assemble_system(model: &SpaceModel, ansatz: &Ansatz) -> Result<LinearSystem, SolitonError> {
    if ansatz.ncols() == 0 {
        return Err(SolitonError::EmptyAnsatz);
    }
    let curv = Curvature::compute(model)?;
    assemble_with_curvature(model, &curv, ansatz)
}

pub fn assemble_with_curvature(
    model: &SpaceModel,
    curv: &Curvature,
    ansatz: &Ansatz,
) -> Result<LinearSystem, SolitonError> {
    let np = model.nparams();
    let one = ParamScalar::one(np);
    let minus_one = ParamScalar::from_integer(np, -1);
    let g = SymTensor::metric(model);
    let mut acc: RowAcc = BTreeMap::new();
    let mut total = g.scale(&ParamScalar::zero(np));

    for (c, b) in ansatz.basis().iter().enumerate() {
        let mut x = VectorField::zero(model);
        x.0[b.component] = ansatz.shape(c);
        let t = lie_derivative_metric(model, &x);
        add_tensor(&mut acc, &t, Some(c), &one, np);
        total = total.add(&t);
    }
    let lambda_total = match ansatz.lambda() {
        LambdaMode::Unknown => {
            let c = ansatz.lambda_column().expect("λ column");
            add_tensor(&mut acc, &g, Some(c), &minus_one, np);
            total = total.sub(&g);
            one.clone()
        }
        LambdaMode::Pinned(l) => {
            let lg = g.scale(l);
            add_tensor(&mut acc, &lg, None, &one, np);
            total = total.sub(&lg);
            l.clone()
        }
    };
    add_tensor(&mut acc, &curv.ricci, None, &minus_one, np);

    // superposition check: residual(Σφ, λ) must equal Σ contributions + ρ
    let all_ones = alloc::vec![one.clone(); ansatz.basis().len()];
    let direct = residual_with_ricci(model, &curv.ricci, &ansatz.field(&all_ones), &lambda_total);
    let assembled = total.add(&curv.ricci);
    let n = model.dim();
    for i in 0..n {
        for j in i..n {
            if direct.0[i][j] != assembled.0[i][j] {
                return Err(SolitonError::NonAffineResidual { i, j });
            }
        }
    }

    let mut rows = Vec::with_capacity(acc.len());
    let mut origins = Vec::with_capacity(acc.len());
    for (origin, (mut entries, rhs)) in acc {
        entries.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, ParamScalar)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 = &last.1 + &v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| !e.1.is_zero());
        if merged.is_empty() && rhs.is_zero() {
            continue;
        }
        rows.push(SparseRow { entries: merged, rhs });
        origins.push(origin);
    }
    Ok(LinearSystem { ansatz: ansatz.clone(), nparams: np, rows, origins })
}

/// Coefficient of `origin.key` in slot `(origin.i, origin.j)` of `t`.
pub fn slot_coefficient(t: &SymTensor, origin: &RowOrigin) -> ParamScalar {
    t.0[origin.i][origin.j].coefficient(&origin.key)
}
