use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::SolitonError;
use crate::expr::{ExpPoly, ParamScalar, TermKey};
use crate::geometry::SpaceModel;

/// How λ enters the system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaMode {
    /// λ is an extra unknown, placed after all field coefficients.
    Unknown,
    Pinned(ParamScalar),
}

/// A shape function `x^mono · exp(⟨freq, x⟩)` in one component of X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisFunction {
    pub component: usize,
    pub key: TermKey,
}

/// Finite trial space for X: one unknown coefficient per basis function,
/// plus λ unless pinned. Column `c < basis.len()` is `basis[c]`; λ is the last
/// column when unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ansatz {
    ncoords: usize,
    nparams: usize,
    basis: Vec<BasisFunction>,
    lambda: LambdaMode,
}

impl Ansatz {
    pub fn new(model: &SpaceModel, basis: Vec<BasisFunction>, lambda: LambdaMode) -> Result<Self, SolitonError> {
        let n = model.dim();
        let mut seen = BTreeSet::new();
        for b in &basis {
            if b.component >= n {
                return Err(SolitonError::ComponentOutOfRange { component: b.component, dim: n });
            }
            if b.key.freq.len() != n || b.key.mono.len() != n {
                return Err(SolitonError::Geometry(crate::error::GeometryError::DimensionMismatch {
                    expected: n,
                    found: b.key.freq.len(),
                }));
            }
            if !seen.insert((b.component, b.key.clone())) {
                return Err(SolitonError::DuplicateBasis { component: b.component });
            }
        }
        if basis.is_empty() && lambda != LambdaMode::Unknown {
            return Err(SolitonError::EmptyAnsatz);
        }
        Ok(Ansatz { ncoords: n, nparams: model.nparams(), basis, lambda })
    }

    /// The same shape list `keys` in every component.
    pub fn uniform(model: &SpaceModel, keys: &[TermKey], lambda: LambdaMode) -> Result<Self, SolitonError> {
        let basis = (0..model.dim())
            .flat_map(|component| keys.iter().map(move |k| BasisFunction { component, key: k.clone() }))
            .collect();
        Self::new(model, basis, lambda)
    }

    pub fn basis(&self) -> &[BasisFunction] {
        &self.basis
    }

    pub fn lambda(&self) -> &LambdaMode {
        &self.lambda
    }

    pub fn with_lambda(&self, lambda: LambdaMode) -> Ansatz {
        Ansatz { lambda, ..self.clone() }
    }

    /// Total number of unknowns.
    pub fn ncols(&self) -> usize {
        self.basis.len() + usize::from(self.lambda == LambdaMode::Unknown)
    }

    pub fn lambda_column(&self) -> Option<usize> {
        (self.lambda == LambdaMode::Unknown).then_some(self.basis.len())
    }

    /// The shape function of column `c` as an exp-polynomial.
    pub fn shape(&self, c: usize) -> ExpPoly {
        ExpPoly::term(self.ncoords, ParamScalar::one(self.nparams), self.basis[c].key.clone())
    }

    /// Assembles `X = Σ u_c φ_c ∂_{component(c)}` from column values.
    pub fn field(&self, values: &[ParamScalar]) -> crate::geometry::VectorField {
        let mut comps: Vec<Vec<(TermKey, ParamScalar)>> = alloc::vec![Vec::new(); self.ncoords];
        for (b, v) in self.basis.iter().zip(values) {
            comps[b.component].push((b.key.clone(), v.clone()));
        }
        crate::geometry::VectorField(
            comps.into_iter().map(|t| ExpPoly::from_terms(self.ncoords, self.nparams, t)).collect(),
        )
    }
}

/// Frequencies reachable as sums of at most `depth` vectors from `±F`, where
/// `F` are the nonzero frequencies occurring in the metric. Always contains 0.
pub fn ansatz_frequencies(model: &SpaceModel, depth: u32) -> Vec<Vec<Rational64>> {
    let zero = alloc::vec![Rational64::zero(); model.dim()];
    let mut generators: BTreeSet<Vec<Rational64>> = BTreeSet::new();
    for f in model.metric_frequencies() {
        if f != zero {
            generators.insert(f.iter().map(|q| -*q).collect());
            generators.insert(f);
        }
    }
    let mut level: BTreeSet<Vec<Rational64>> = BTreeSet::new();
    level.insert(zero);
    for _ in 0..depth {
        let mut next = level.clone();
        for a in &level {
            for g in &generators {
                next.insert(a.iter().zip(g).map(|(x, y)| *x + *y).collect());
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// Exponent vectors of total degree `≤ degree` in `n` variables.
pub fn monomials(n: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, degree, &mut Vec::new(), &mut out);
    out
}

pub const DEFAULT_DEGREE: u32 = 2;
pub const DEFAULT_FREQ_DEPTH: u32 = 2;

/// Every component gets `x^m · exp(f)` for all monomials of degree
/// `≤ degree` and all frequencies from [`ansatz_frequencies`]; λ is unknown.
/// Columns are ordered by component, then by term key.
pub fn ansatz_with(model: &SpaceModel, degree: u32, freq_depth: u32) -> Result<Ansatz, SolitonError> {
    let mut keys: Vec<TermKey> = Vec::new();
    for freq in ansatz_frequencies(model, freq_depth) {
        for mono in monomials(model.dim(), degree) {
            keys.push(TermKey { freq: freq.clone(), mono });
        }
    }
    keys.sort();
    Ansatz::uniform(model, &keys, LambdaMode::Unknown)
}

/// [`ansatz_with`] at degree 2 and frequency depth 2.
pub fn default_ansatz(model: &SpaceModel) -> Result<Ansatz, SolitonError> {
    ansatz_with(model, DEFAULT_DEGREE, DEFAULT_FREQ_DEPTH)
}
