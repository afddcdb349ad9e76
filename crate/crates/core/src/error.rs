use alloc::string::String;
use thiserror::Error;

/// Operands built over different coordinate/parameter contexts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "context mismatch: ({left_coords} coords, {left_params} params) vs ({right_coords} coords, {right_params} params)"
)]
pub struct ContextError {
    pub left_coords: usize,
    pub left_params: usize,
    pub right_coords: usize,
    pub right_params: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero under the given parameter assignment")]
    DivisionByZero,
    #[error("expected {expected} parameter values, got {found}")]
    ParameterCount { expected: usize, found: usize },
    #[error("expected a point of dimension {expected}, got {found}")]
    PointDimension { expected: usize, found: usize },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("eps must be assigned +1 or -1")]
    BadEps,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(
        "metric determinant has {terms} terms or a coordinate factor; the inverse leaves the exp-polynomial class"
    )]
    NonMonomialDeterminant { terms: usize },
    #[error("computed Ricci tensor is not symmetric at ({i}, {j})")]
    AsymmetryDetected { i: usize, j: usize },
    #[error("metric is not symmetric at ({i}, {j})")]
    AsymmetricMetric { i: usize, j: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Context(#[from] ContextError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolitonError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("ansatz has no unknowns")]
    EmptyAnsatz,
    #[error("ansatz lists a basis function twice for component {component}")]
    DuplicateBasis { component: usize },
    #[error("ansatz component {component} out of range for dimension {dim}")]
    ComponentOutOfRange { component: usize, dim: usize },
    #[error("residual is not affine in the unknowns at slot ({i}, {j})")]
    NonAffineResidual { i: usize, j: usize },
    #[error("column {column} has only zero-divisor candidates for a pivot")]
    ZeroDivisorPivot { column: usize },
    #[error(transparent)]
    Context(#[from] ContextError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("known solution `{0}` failed verification")]
    SelfTestFailed(String),
    #[error(transparent)]
    Soliton(#[from] SolitonError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("metric is degenerate at sample point {index}")]
    DegenerateMetricAtPoint { index: usize },
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
