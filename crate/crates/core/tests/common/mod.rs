#![allow(dead_code)]

use num_rational::Rational64;
use soliton_core::catalog;
use soliton_core::geometry::{SymTensor, VectorField};
use soliton_core::{ExpPoly, ParamScalar, ParamValues, SpaceModel};

/// Builders for exact values in a fixed `(ncoords, nparams)` context.
pub struct Ctx {
    pub n: usize,
    pub np: usize,
}

impl Ctx {
    pub fn of(model: &SpaceModel) -> Self {
        Ctx { n: model.dim(), np: model.nparams() }
    }

    pub fn q(&self, a: i64, b: i64) -> ParamScalar {
        ParamScalar::from_ratio(self.np, a, b)
    }

    pub fn p(&self, i: usize) -> ParamScalar {
        ParamScalar::param(self.np, i)
    }

    pub fn eps(&self) -> ParamScalar {
        ParamScalar::eps(self.np)
    }

    pub fn c(&self, s: ParamScalar) -> ExpPoly {
        ExpPoly::constant(self.n, s)
    }

    pub fn int(&self, k: i64) -> ExpPoly {
        ExpPoly::integer(self.n, self.np, k)
    }

    pub fn zero(&self) -> ExpPoly {
        ExpPoly::zero(self.n, self.np)
    }

    pub fn x(&self, i: usize) -> ExpPoly {
        ExpPoly::coord(self.n, self.np, i)
    }

    /// `exp(⟨f, x⟩)` with integer frequencies.
    pub fn e(&self, f: &[i64]) -> ExpPoly {
        ExpPoly::exp(self.np, f.iter().map(|&k| Rational64::from_integer(k)).collect())
    }

    pub fn sym(&self, entries: &[((usize, usize), ExpPoly)]) -> SymTensor {
        let mut t = vec![vec![self.zero(); self.n]; self.n];
        for ((i, j), v) in entries {
            t[*i][*j] = v.clone();
            t[*j][*i] = v.clone();
        }
        SymTensor(t)
    }

    pub fn field(&self, comps: Vec<ExpPoly>) -> VectorField {
        assert_eq!(comps.len(), self.n);
        VectorField(comps)
    }
}

pub fn model(id: &str) -> SpaceModel {
    catalog::get(id).expect("catalog entry").model
}

/// `1/μ` for models whose parameter 0 is μ.
pub fn inv_mu(k: &Ctx) -> ParamScalar {
    k.p(0).inv().expect("mu is a unit")
}

/// Parameter assignment for the shipped models: μ, then every other
/// parameter set to a distinct nonzero value.
pub fn values(model: &SpaceModel, eps: f64, mu: f64) -> ParamValues {
    let mut v = vec![mu];
    v.extend((1..model.nparams()).map(|i| 0.3 + 0.25 * i as f64));
    v.truncate(model.nparams());
    ParamValues::new(v, eps)
}

/// Dense Gaussian elimination with partial pivoting; `None` if singular.
pub fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs()))?;
        if m[p][c].abs() < 1e-12 {
            return None;
        }
        m.swap(c, p);
        let d = m[c][c];
        m[c].iter_mut().for_each(|v| *v /= d);
        for r in 0..n {
            if r != c {
                let f = m[r][c];
                let pivot = m[c].clone();
                m[r].iter_mut().zip(&pivot).for_each(|(v, pv)| *v -= f * pv);
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Numeric rank by elimination with partial pivoting.
pub fn rank(mut m: Vec<Vec<f64>>, tol: f64) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let p = (r..m.len()).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs())).unwrap();
        if m[p][c].abs() <= tol {
            continue;
        }
        m.swap(r, p);
        for k in r + 1..m.len() {
            let f = m[k][c] / m[r][c];
            let pivot = m[r].clone();
            m[k].iter_mut().zip(&pivot).for_each(|(v, pv)| *v -= f * pv);
        }
        r += 1;
    }
    r
}
