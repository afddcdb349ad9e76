//! Affine families of soliton data and exact containment between them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::linear::{reduce, SparseRow};
use super::solve::SolitonSolution;
use crate::expr::{ParamScalar, TermKey};
use crate::geometry::VectorField;

/// `base + span(generators)`, each element a pair `(X, λ)`.
#[derive(Clone, Debug)]
pub struct AffineFamily {
    pub base: (VectorField, ParamScalar),
    pub generators: Vec<(VectorField, ParamScalar)>,
}

fn sub_pair(a: &(VectorField, ParamScalar), b: &(VectorField, ParamScalar)) -> (VectorField, ParamScalar) {
    (a.0.sub(&b.0), &a.1 - &b.1)
}

/// Row key for a pair: component `k < n` with a term key, or λ as `n`.
type Slot = (usize, Option<TermKey>);

fn coefficients(v: &(VectorField, ParamScalar)) -> BTreeMap<Slot, ParamScalar> {
    let mut out = BTreeMap::new();
    for (k, c) in v.0 .0.iter().enumerate() {
        for t in c.terms() {
            out.insert((k, Some(t.key.clone())), t.coeff.clone());
        }
    }
    if !v.1.is_zero() {
        out.insert((v.0.dim(), None), v.1.clone());
    }
    out
}

fn is_zero_pair(v: &(VectorField, ParamScalar)) -> bool {
    v.0.is_zero() && v.1.is_zero()
}

/// Coefficients `c` with `target = Σ cᵢ·gensᵢ`, verified by reconstruction.
/// `None` when the target is outside the span (or the reduction meets a
/// zero divisor, in which case membership is not decided).
pub fn express_in_span(
    gens: &[(VectorField, ParamScalar)],
    target: &(VectorField, ParamScalar),
) -> Option<Vec<ParamScalar>> {
    let np = target.1.nparams();
    let mut rows: BTreeMap<Slot, SparseRow> = BTreeMap::new();
    let blank = || SparseRow { entries: Vec::new(), rhs: ParamScalar::zero(np) };
    for (c, g) in gens.iter().enumerate() {
        for (slot, v) in coefficients(g) {
            rows.entry(slot).or_insert_with(blank).entries.push((c, v));
        }
    }
    for (slot, v) in coefficients(target) {
        rows.entry(slot).or_insert_with(blank).rhs = v;
    }
    let rref = reduce(gens.len(), rows.into_values().collect()).ok()?;
    if rref.inconsistent_row().is_some() {
        return None;
    }
    let coeffs = rref.particular(np);
    let mut acc = target.clone();
    for (g, c) in gens.iter().zip(&coeffs) {
        acc = (acc.0.sub(&g.0.scale(c)), &acc.1 - &(&g.1 * c));
    }
    is_zero_pair(&acc).then_some(coeffs)
}

impl AffineFamily {
    pub fn from_solution(s: &SolitonSolution) -> Self {
        AffineFamily {
            base: (s.particular.clone(), s.lambda.clone()),
            generators: s.directions.iter().map(|d| (d.field.clone(), d.lambda.clone())).collect(),
        }
    }

    /// Reads a family written with symbolic free constants `params`: the base
    /// is the value at all-zero constants and generator `i` is the change when
    /// constant `i` is set to 1. Returns `None` unless the data is affine in
    /// those constants (checked by rebuilding it).
    pub fn from_parametric(x: &VectorField, lambda: &ParamScalar, params: &[usize]) -> Option<Self> {
        let np = lambda.nparams();
        let zero = BigRational::zero();
        let one = BigRational::one();
        let at = |hot: Option<usize>| -> Option<(VectorField, ParamScalar)> {
            let mut xv = x.clone();
            let mut lv = lambda.clone();
            for &p in params {
                let v = if Some(p) == hot { &one } else { &zero };
                xv = xv.substitute_param(p, v).ok()?;
                lv = lv.substitute(p, v).ok()?;
            }
            Some((xv, lv))
        };
        let base = at(None)?;
        let generators =
            params.iter().map(|&p| at(Some(p)).map(|v| sub_pair(&v, &base))).collect::<Option<Vec<_>>>()?;
        let mut rebuilt = base.clone();
        for (&p, g) in params.iter().zip(&generators) {
            let c = ParamScalar::param(np, p);
            rebuilt = (rebuilt.0.add(&g.0.scale(&c)), &rebuilt.1 + &(&g.1 * &c));
        }
        is_zero_pair(&sub_pair(&rebuilt, &(x.clone(), lambda.clone()))).then_some(AffineFamily { base, generators })
    }

    /// Every member of `other` is a member of `self`.
    pub fn contains(&self, other: &AffineFamily) -> bool {
        let offset = sub_pair(&other.base, &self.base);
        express_in_span(&self.generators, &offset).is_some()
            && other.generators.iter().all(|g| express_in_span(&self.generators, g).is_some())
    }

    pub fn same_as(&self, other: &AffineFamily) -> bool {
        self.contains(other) && other.contains(self)
    }

    /// Dimension of the span of the generators.
    pub fn dimension(&self) -> usize {
        let mut independent: Vec<(VectorField, ParamScalar)> = Vec::new();
        for g in &self.generators {
            if express_in_span(&independent, g).is_none() {
                independent.push(g.clone());
            }
        }
        independent.len()
    }

    pub fn contains_point(&self, x: &VectorField, lambda: &ParamScalar) -> bool {
        let offset = sub_pair(&(x.clone(), lambda.clone()), &self.base);
        express_in_span(&self.generators, &offset).is_some()
    }
}
