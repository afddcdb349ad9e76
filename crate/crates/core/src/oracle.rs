//! Finite-difference cross-check of the symbolic curvature pipeline.
//!
//! Only numeric evaluations of the metric components are used here; the
//! symbolic connection is never consulted when building the numeric side.

use alloc::string::ToString;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::OracleError;
use crate::expr::{ExpPoly, ParamValues};
use crate::geometry::{Curvature, SpaceModel};

pub const DEFAULT_H: f64 = 1e-4;
pub const DEFAULT_REL: f64 = 1e-6;
pub const DEFAULT_ABS: f64 = 1e-9;

/// A model at a numeric parameter assignment, with sample points.
#[derive(Clone, Debug)]
pub struct NumericScene {
    pub model: SpaceModel,
    pub params: ParamValues,
    pub points: Vec<Vec<f64>>,
    pub h: f64,
    pub rel: f64,
    pub abs: f64,
}

/// `count` points drawn uniformly from `[−1, 1]ⁿ`.
pub fn sample_points(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()).collect()
}

impl NumericScene {
    pub fn new(model: SpaceModel, params: ParamValues, points: Vec<Vec<f64>>) -> Self {
        NumericScene { model, params, points, h: DEFAULT_H, rel: DEFAULT_REL, abs: DEFAULT_ABS }
    }

    pub fn sampled(model: SpaceModel, params: ParamValues, count: usize, seed: u64) -> Self {
        let points = sample_points(model.dim(), count, seed);
        Self::new(model, params, points)
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.h = h;
        self
    }

    /// Checks step, dimensions, and nondegeneracy at every point.
    pub fn validate(&self) -> Result<(), OracleError> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(OracleError::InvalidScene("step size must be positive".to_string()));
        }
        if self.params.values.len() != self.model.nparams() {
            return Err(OracleError::InvalidScene("parameter assignment has the wrong length".to_string()));
        }
        for (index, p) in self.points.iter().enumerate() {
            if p.len() != self.model.dim() {
                return Err(OracleError::InvalidScene("sample point has the wrong dimension".to_string()));
            }
            let g = metric_at(&self.model, &self.params, p)?;
            if invert(&g).is_none() {
                return Err(OracleError::DegenerateMetricAtPoint { index });
            }
        }
        Ok(())
    }
}

type Mat = Vec<Vec<f64>>;
/// `gamma[k][i][j] = Γᵏᵢⱼ`.
pub type NumGamma = Vec<Vec<Vec<f64>>>;

fn metric_at(model: &SpaceModel, params: &ParamValues, p: &[f64]) -> Result<Mat, OracleError> {
    model
        .metric()
        .iter()
        .map(|row| row.iter().map(|e| e.eval(p, params).map_err(OracleError::from)).collect())
        .collect()
}

/// Gauss–Jordan inverse with partial pivoting; `None` if numerically singular.
fn invert(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    let mut m: Mat = a.clone();
    let mut inv: Mat = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for col in 0..n {
        let p = (col..n).max_by(|&r, &s| m[r][col].abs().total_cmp(&m[s][col].abs()))?;
        if m[p][col].abs() <= 1e-12 * scale {
            return None;
        }
        m.swap(col, p);
        inv.swap(col, p);
        let d = m[col][col];
        for j in 0..n {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != 0.0 {
                    for j in 0..n {
                        m[r][j] -= f * m[col][j];
                        inv[r][j] -= f * inv[col][j];
                    }
                }
            }
        }
    }
    Some(inv)
}

fn shifted(p: &[f64], axis: usize, delta: f64) -> Vec<f64> {
    let mut q = p.to_vec();
    q[axis] += delta;
    q
}

/// Γ at one point: central differences of g fed into the Koszul formula.
fn gamma_at(scene: &NumericScene, p: &[f64], index: usize) -> Result<NumGamma, OracleError> {
    let n = scene.model.dim();
    let h = scene.h;
    let g = metric_at(&scene.model, &scene.params, p)?;
    let ginv = invert(&g).ok_or(OracleError::DegenerateMetricAtPoint { index })?;
    let mut dg: Vec<Mat> = Vec::with_capacity(n);
    for l in 0..n {
        let plus = metric_at(&scene.model, &scene.params, &shifted(p, l, h))?;
        let minus = metric_at(&scene.model, &scene.params, &shifted(p, l, -h))?;
        dg.push((0..n).map(|i| (0..n).map(|j| (plus[i][j] - minus[i][j]) / (2.0 * h)).collect()).collect());
    }
    let mut gamma = alloc::vec![alloc::vec![alloc::vec![0.0; n]; n]; n];
    for (k, gk) in gamma.iter_mut().enumerate() {
        for (i, gki) in gk.iter_mut().enumerate() {
            for (j, v) in gki.iter_mut().enumerate() {
                *v = 0.5 * (0..n).map(|l| ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j])).sum::<f64>();
            }
        }
    }
    Ok(gamma)
}

/// Numeric Christoffel symbols at every sample point.
pub fn fd_christoffel(scene: &NumericScene) -> Result<Vec<NumGamma>, OracleError> {
    scene.points.iter().enumerate().map(|(i, p)| gamma_at(scene, p, i)).collect()
}

/// ρ at one point, with `∂Γ` by central differences of the numeric Γ.
fn ricci_at(scene: &NumericScene, p: &[f64], index: usize) -> Result<Mat, OracleError> {
    let n = scene.model.dim();
    let h = scene.h;
    let gm = gamma_at(scene, p, index)?;
    // dgamma[m][l][i][j] = ∂ₘ Γˡᵢⱼ
    let mut dgamma: Vec<NumGamma> = Vec::with_capacity(n);
    for m in 0..n {
        let plus = gamma_at(scene, &shifted(p, m, h), index)?;
        let minus = gamma_at(scene, &shifted(p, m, -h), index)?;
        dgamma.push(
            (0..n)
                .map(|l| {
                    (0..n).map(|i| (0..n).map(|j| (plus[l][i][j] - minus[l][i][j]) / (2.0 * h)).collect()).collect()
                })
                .collect(),
        );
    }
    let mut rho = alloc::vec![alloc::vec![0.0; n]; n];
    for (j, row) in rho.iter_mut().enumerate() {
        for (k, v) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..n {
                acc += dgamma[i][i][j][k] - dgamma[j][i][i][k];
                for m in 0..n {
                    acc += gm[i][i][m] * gm[m][j][k] - gm[i][j][m] * gm[m][i][k];
                }
            }
            *v = acc;
        }
    }
    Ok(rho)
}

/// Numeric Ricci tensors at every sample point.
pub fn fd_ricci(scene: &NumericScene) -> Result<Vec<Mat>, OracleError> {
    scene.points.iter().enumerate().map(|(i, p)| ricci_at(scene, p, i)).collect()
}

/// Numeric `gʲᵏ ρⱼₖ` at every sample point.
pub fn fd_scalar_curvature(scene: &NumericScene) -> Result<Vec<f64>, OracleError> {
    let n = scene.model.dim();
    scene
        .points
        .iter()
        .enumerate()
        .map(|(index, p)| {
            let rho = ricci_at(scene, p, index)?;
            let g = metric_at(&scene.model, &scene.params, p)?;
            let ginv = invert(&g).ok_or(OracleError::DegenerateMetricAtPoint { index })?;
            Ok((0..n).flat_map(|j| (0..n).map(move |k| (j, k))).map(|(j, k)| ginv[j][k] * rho[j][k]).sum())
        })
        .collect()
}

/// Deviation between a symbolic (reference) and a numeric tensor.
///
/// Normwise: the tensor passes when `max |a − b| ≤ max(rel · max |b|, abs)`,
/// with `b` the symbolic values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub max_abs: f64,
    /// `max_abs` relative to the largest symbolic magnitude (0 when that is 0).
    pub max_rel: f64,
    pub pass: bool,
}

pub fn compare(symbolic: &[f64], numeric: &[f64], rel: f64, abs: f64) -> Comparison {
    let scale = symbolic.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let max_abs = symbolic.iter().zip(numeric).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let max_rel = if scale > 0.0 { max_abs / scale } else { 0.0 };
    let pass = symbolic.len() == numeric.len() && max_abs.is_finite() && max_abs <= (rel * scale).max(abs);
    Comparison { max_abs, max_rel, pass }
}

impl Comparison {
    /// Worst case over several comparisons.
    pub fn merge(self, other: Comparison) -> Comparison {
        Comparison {
            max_abs: self.max_abs.max(other.max_abs),
            max_rel: self.max_rel.max(other.max_rel),
            pass: self.pass && other.pass,
        }
    }

    pub fn perfect() -> Comparison {
        Comparison { max_abs: 0.0, max_rel: 0.0, pass: true }
    }
}

/// Summary of a symbolic-vs-numeric run over all sample points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleReport {
    pub points: usize,
    pub christoffel: Comparison,
    pub ricci: Comparison,
    pub scalar: Comparison,
}

impl OracleReport {
    pub fn pass(&self) -> bool {
        self.christoffel.pass && self.ricci.pass && self.scalar.pass
    }
}

fn eval_all<'a, I>(items: I, p: &[f64], params: &ParamValues) -> Result<Vec<f64>, OracleError>
where
    I: IntoIterator<Item = &'a ExpPoly>,
{
    items.into_iter().map(|e| e.eval(p, params).map_err(OracleError::from)).collect()
}

/// Compares the symbolic Γ, ρ and τ of `curv` against finite differences.
pub fn run(scene: &NumericScene, curv: &Curvature) -> Result<OracleReport, OracleError> {
    scene.validate()?;
    let mut report = OracleReport {
        points: scene.points.len(),
        christoffel: Comparison::perfect(),
        ricci: Comparison::perfect(),
        scalar: Comparison::perfect(),
    };
    let n = scene.model.dim();
    for (index, p) in scene.points.iter().enumerate() {
        let num_gamma = gamma_at(scene, p, index)?;
        let sym_gamma = eval_all(curv.connection.gamma.iter().flatten().flatten(), p, &scene.params)?;
        let flat_gamma: Vec<f64> = num_gamma.into_iter().flatten().flatten().collect();
        report.christoffel = report.christoffel.merge(compare(&sym_gamma, &flat_gamma, scene.rel, scene.abs));

        let num_rho = ricci_at(scene, p, index)?;
        let sym_rho = eval_all(curv.ricci.0.iter().flatten(), p, &scene.params)?;
        let flat_rho: Vec<f64> = num_rho.iter().flatten().copied().collect();
        report.ricci = report.ricci.merge(compare(&sym_rho, &flat_rho, scene.rel, scene.abs));

        let g = metric_at(&scene.model, &scene.params, p)?;
        let ginv = invert(&g).ok_or(OracleError::DegenerateMetricAtPoint { index })?;
        let tau: f64 = (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).map(|(j, k)| ginv[j][k] * num_rho[j][k]).sum();
        let sym_tau = curv.scalar.eval(p, &scene.params)?;
        report.scalar = report.scalar.merge(compare(&[sym_tau], &[tau], scene.rel, scene.abs));
    }
    Ok(report)
}

/// Largest absolute deviation of numeric from symbolic ρ over the scene;
/// used for convergence-order checks.
pub fn ricci_error(scene: &NumericScene, curv: &Curvature) -> Result<f64, OracleError> {
    let mut worst = 0.0f64;
    for (index, p) in scene.points.iter().enumerate() {
        let num = ricci_at(scene, p, index)?;
        let sym = eval_all(curv.ricci.0.iter().flatten(), p, &scene.params)?;
        for (a, b) in sym.iter().zip(num.iter().flatten()) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}

/// Largest absolute deviation of numeric from symbolic Γ over the scene.
pub fn christoffel_error(scene: &NumericScene, curv: &Curvature) -> Result<f64, OracleError> {
    let mut worst = 0.0f64;
    for (index, p) in scene.points.iter().enumerate() {
        let num = gamma_at(scene, p, index)?;
        let sym = eval_all(curv.connection.gamma.iter().flatten().flatten(), p, &scene.params)?;
        for (a, b) in sym.iter().zip(num.iter().flatten().flatten()) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}
