use alloc::vec::Vec;

use super::ansatz::{Ansatz, LambdaMode};
use super::linear::{reduce, Rref};
use super::system::{LinearSystem, RowOrigin};
use crate::error::SolitonError;
use crate::expr::{ParamScalar, Poly};
use crate::geometry::VectorField;

/// One generator of the homogeneous part of a solution set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    /// Ansatz column that was free in the reduced system.
    pub free_column: usize,
    pub field: VectorField,
    /// λ-component; zero whenever λ is forced.
    pub lambda: ParamScalar,
}

/// The affine solution set `particular + span(directions)` of a solved system.
#[derive(Clone, Debug)]
pub struct SolitonSolution {
    pub particular: VectorField,
    pub lambda: ParamScalar,
    pub directions: Vec<Direction>,
    /// Polynomials in the parameters that were inverted during elimination.
    pub pivot_denominators: Vec<Poly>,
    pub rank: usize,
    pub nrows: usize,
    pub ncols: usize,
}

impl SolitonSolution {
    /// Number of free constants of the family.
    pub fn free_constants(&self) -> usize {
        self.directions.len()
    }

    /// True when every member of the family has the same λ.
    pub fn lambda_forced(&self) -> bool {
        self.directions.iter().all(|d| d.lambda.is_zero())
    }

    /// `particular + Σ cᵢ·directionᵢ`.
    pub fn member(&self, coeffs: &[ParamScalar]) -> (VectorField, ParamScalar) {
        let mut x = self.particular.clone();
        let mut l = self.lambda.clone();
        for (d, c) in self.directions.iter().zip(coeffs) {
            x = x.add(&d.field.scale(c));
            l = &l + &(&d.lambda * c);
        }
        (x, l)
    }
}

/// A reduced row reading `0 = rhs` with `rhs ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Residual slot and term key of the original equation that reduced to
    /// the inconsistency.
    pub origin: RowOrigin,
    pub rhs: ParamScalar,
}

#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solved(SolitonSolution),
    Infeasible(Certificate),
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&SolitonSolution> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            SolveOutcome::Infeasible(_) => None,
        }
    }
}

fn split(ansatz: &Ansatz, u: &[ParamScalar], nparams: usize) -> (VectorField, ParamScalar) {
    let nb = ansatz.basis().len();
    let field = ansatz.field(&u[..nb]);
    let lambda = match ansatz.lambda() {
        LambdaMode::Unknown => u[nb].clone(),
        LambdaMode::Pinned(_) => ParamScalar::zero(nparams),
    };
    (field, lambda)
}

/// Exact elimination of an assembled system.
pub fn solve(system: &LinearSystem) -> Result<SolveOutcome, SolitonError> {
    let ncols = system.ncols();
    let rref: Rref = reduce(ncols, system.rows.clone()).map_err(|z| SolitonError::ZeroDivisorPivot { column: z.0 })?;
    if let Some(r) = rref.inconsistent_row() {
        return Ok(SolveOutcome::Infeasible(Certificate {
            origin: system.origins[r].clone(),
            rhs: rref.rows[r].rhs.clone(),
        }));
    }
    let np = system.nparams;
    let ansatz = &system.ansatz;
    let (particular, mut lambda) = split(ansatz, &rref.particular(np), np);
    if let LambdaMode::Pinned(l) = ansatz.lambda() {
        lambda = l.clone();
    }
    let free = rref.free_columns();
    let directions = rref
        .nullspace(np)
        .into_iter()
        .zip(free)
        .map(|(u, free_column)| {
            let (field, lambda) = split(ansatz, &u, np);
            Direction { free_column, field, lambda }
        })
        .collect();
    Ok(SolveOutcome::Solved(SolitonSolution {
        particular,
        lambda,
        directions,
        pivot_denominators: rref.pivot_denominators,
        rank: rref.pivots.len(),
        nrows: system.rows.len(),
        ncols,
    }))
}
