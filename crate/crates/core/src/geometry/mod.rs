//! Coordinate models and the tensor calculus built on them.
//!
//! All tensors are stored dense; dimensions in scope are small (≤ 4) and
//! symmetric storage would only complicate indexing.

mod calculus;
mod curvature;
pub mod invariants;
mod metric;

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Index;

use num_rational::BigRational;

use crate::error::{EvalError, GeometryError};
use crate::expr::{ExpPoly, ParamScalar, ParamValues};

pub use calculus::{exterior_derivative, gradient, lie_derivative_metric, lower};
pub use curvature::{christoffel, ricci, riemann, scalar_curvature, Connection, Curvature, CurvatureSlices};
pub use metric::{determinant, inverse_metric};

/// A declared model parameter. `nonzero` is a documented constraint used when
/// sampling numeric assignments; the algebra never branches on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamDecl {
    pub name: String,
    pub nonzero: bool,
}

impl ParamDecl {
    pub fn new(name: &str, nonzero: bool) -> Self {
        ParamDecl { name: String::from(name), nonzero }
    }
}

/// A coordinate chart `ℝⁿ` with a symmetric metric of exp-polynomials.
///
/// The sign symbol ε is always available to coefficients; `uses_eps` records
/// whether the model declares it. The chart domain is all of `ℝⁿ`, which is
/// what the gradient criterion in `soliton::gradient_check` relies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceModel {
    coords: Vec<String>,
    params: Vec<ParamDecl>,
    uses_eps: bool,
    metric: Vec<Vec<ExpPoly>>,
}

impl SpaceModel {
    pub fn new(
        coords: Vec<String>,
        params: Vec<ParamDecl>,
        uses_eps: bool,
        metric: Vec<Vec<ExpPoly>>,
    ) -> Result<Self, GeometryError> {
        let n = coords.len();
        if metric.len() != n {
            return Err(GeometryError::DimensionMismatch { expected: n, found: metric.len() });
        }
        for (i, row) in metric.iter().enumerate() {
            if row.len() != n {
                return Err(GeometryError::DimensionMismatch { expected: n, found: row.len() });
            }
            for (j, e) in row.iter().enumerate() {
                if e.ncoords() != n || e.nparams() != params.len() {
                    return Err(GeometryError::Context(crate::error::ContextError {
                        left_coords: n,
                        left_params: params.len(),
                        right_coords: e.ncoords(),
                        right_params: e.nparams(),
                    }));
                }
                if j < i && metric[j][i] != *e {
                    return Err(GeometryError::AsymmetricMetric { i, j });
                }
            }
        }
        Ok(SpaceModel { coords, params, uses_eps, metric })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn params(&self) -> &[ParamDecl] {
        &self.params
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn uses_eps(&self) -> bool {
        self.uses_eps
    }

    pub fn metric(&self) -> &[Vec<ExpPoly>] {
        &self.metric
    }

    pub fn g(&self, i: usize, j: usize) -> &ExpPoly {
        &self.metric[i][j]
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p.name == name)
    }

    pub fn zero(&self) -> ExpPoly {
        ExpPoly::zero(self.dim(), self.nparams())
    }

    pub fn one(&self) -> ExpPoly {
        ExpPoly::one(self.dim(), self.nparams())
    }

    pub fn coord(&self, i: usize) -> ExpPoly {
        ExpPoly::coord(self.dim(), self.nparams(), i)
    }

    pub fn scalar(&self, s: ParamScalar) -> ExpPoly {
        ExpPoly::constant(self.dim(), s)
    }

    /// The parameter named `name` as a coefficient; `eps` names ε.
    pub fn param(&self, name: &str) -> Option<ParamScalar> {
        if name == "eps" {
            return Some(ParamScalar::eps(self.nparams()));
        }
        self.param_index(name).map(|i| ParamScalar::param(self.nparams(), i))
    }

    /// Substitutes a rational value for a parameter everywhere in the metric.
    /// The parameter stays declared so parameter indices are unchanged.
    pub fn pin(&self, name: &str, value: &BigRational) -> Result<SpaceModel, EvalError> {
        let idx = self.param_index(name).ok_or_else(|| EvalError::UnknownParameter(String::from(name)))?;
        let metric = self
            .metric
            .iter()
            .map(|row| row.iter().map(|e| e.substitute_param(idx, value)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SpaceModel { metric, ..self.clone() })
    }

    /// Appends parameters (e.g. free constants of a known solution).
    pub fn with_extra_params(&self, extra: &[ParamDecl]) -> SpaceModel {
        let k = extra.len();
        let mut params = self.params.clone();
        params.extend_from_slice(extra);
        let metric = self.metric.iter().map(|row| row.iter().map(|e| e.extend_params(k)).collect()).collect();
        SpaceModel { params, metric, ..self.clone() }
    }

    /// Numeric assignment from `(name, value)` pairs; `eps` sets ε.
    /// Undeclared names and missing parameters are errors.
    pub fn param_values(&self, assignment: &[(&str, f64)]) -> Result<ParamValues, EvalError> {
        let mut values: Vec<Option<f64>> = alloc::vec![None; self.nparams()];
        let mut eps = 1.0;
        for (name, v) in assignment {
            if *name == "eps" {
                if *v != 1.0 && *v != -1.0 {
                    return Err(EvalError::BadEps);
                }
                eps = *v;
                continue;
            }
            let idx = self.param_index(name).ok_or_else(|| EvalError::UnknownParameter(String::from(*name)))?;
            values[idx] = Some(*v);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| EvalError::UnknownParameter(self.params[i].name.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ParamValues::new(values, eps))
    }

    /// The set of exponential frequency vectors occurring in the metric.
    pub fn metric_frequencies(&self) -> Vec<Vec<num_rational::Rational64>> {
        let mut out: Vec<Vec<num_rational::Rational64>> = Vec::new();
        for row in &self.metric {
            for e in row {
                for t in e.terms() {
                    if !out.contains(&t.key.freq) {
                        out.push(t.key.freq.clone());
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// Contravariant vector field `X = Xⁱ ∂ᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField(pub Vec<ExpPoly>);

/// Covariant 1-form `ω = ωᵢ dxⁱ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm(pub Vec<ExpPoly>);

/// Symmetric covariant 2-tensor, dense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor(pub Vec<Vec<ExpPoly>>);

/// Antisymmetric covariant 2-tensor, dense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoForm(pub Vec<Vec<ExpPoly>>);

impl VectorField {
    pub fn zero(model: &SpaceModel) -> Self {
        VectorField(alloc::vec![model.zero(); model.dim()])
    }

    /// The coordinate field `∂ᵢ`.
    pub fn coordinate(model: &SpaceModel, i: usize) -> Self {
        let mut v = Self::zero(model);
        v.0[i] = model.one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(ExpPoly::is_zero)
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &ParamScalar) -> VectorField {
        VectorField(self.0.iter().map(|a| a.scale(s)).collect())
    }

    pub fn substitute_param(&self, index: usize, value: &BigRational) -> Result<VectorField, EvalError> {
        Ok(VectorField(self.0.iter().map(|c| c.substitute_param(index, value)).collect::<Result<_, _>>()?))
    }
}

impl Index<usize> for VectorField {
    type Output = ExpPoly;
    fn index(&self, i: usize) -> &ExpPoly {
        &self.0[i]
    }
}

impl Index<usize> for OneForm {
    type Output = ExpPoly;
    fn index(&self, i: usize) -> &ExpPoly {
        &self.0[i]
    }
}

impl Index<(usize, usize)> for SymTensor {
    type Output = ExpPoly;
    fn index(&self, (i, j): (usize, usize)) -> &ExpPoly {
        &self.0[i][j]
    }
}

impl Index<(usize, usize)> for TwoForm {
    type Output = ExpPoly;
    fn index(&self, (i, j): (usize, usize)) -> &ExpPoly {
        &self.0[i][j]
    }
}

impl SymTensor {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(ExpPoly::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.0[i][j] == self.0[j][i]))
    }

    pub fn add(&self, other: &SymTensor) -> SymTensor {
        SymTensor(self.0.iter().zip(&other.0).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect()).collect())
    }

    pub fn sub(&self, other: &SymTensor) -> SymTensor {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymTensor {
        SymTensor(self.0.iter().map(|r| r.iter().map(|a| -a).collect()).collect())
    }

    pub fn scale(&self, s: &ParamScalar) -> SymTensor {
        SymTensor(self.0.iter().map(|r| r.iter().map(|a| a.scale(s)).collect()).collect())
    }

    /// The metric viewed as a tensor.
    pub fn metric(model: &SpaceModel) -> SymTensor {
        SymTensor(model.metric().to_vec())
    }
}

impl TwoForm {
    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(ExpPoly::is_zero)
    }

    /// First nonzero component `(i, j)` with `i < j`.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        let n = self.0.len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !self.0[i][j].is_zero())
    }
}
