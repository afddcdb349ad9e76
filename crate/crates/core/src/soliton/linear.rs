//! Sparse Gauss–Jordan elimination over the parameter field.

use alloc::vec::Vec;

use crate::expr::{ParamScalar, Poly};

/// One equation `Σ entries[c]·u_c = rhs`, entries sorted by column with no
/// zero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRow {
    pub entries: Vec<(usize, ParamScalar)>,
    pub rhs: ParamScalar,
}

impl SparseRow {
    pub fn get(&self, col: usize) -> Option<&ParamScalar> {
        self.entries.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &self.entries[i].1)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn scale(&mut self, s: &ParamScalar) {
        for (_, v) in &mut self.entries {
            *v = &*v * s;
        }
        self.rhs = &self.rhs * s;
    }

    /// `self − f·other`.
    fn sub_scaled(&self, f: &ParamScalar, other: &SparseRow) -> SparseRow {
        let mut entries = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ca = self.entries.get(a).map(|e| e.0);
            let cb = other.entries.get(b).map(|e| e.0);
            match (ca, cb) {
                (Some(x), Some(y)) if x == y => {
                    let v = &self.entries[a].1 - &(f * &other.entries[b].1);
                    if !v.is_zero() {
                        entries.push((x, v));
                    }
                    a += 1;
                    b += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    entries.push(self.entries[a].clone());
                    a += 1;
                }
                (Some(_), None) => {
                    entries.push(self.entries[a].clone());
                    a += 1;
                }
                (_, Some(y)) => {
                    entries.push((y, -(f * &other.entries[b].1)));
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseRow { entries, rhs: &self.rhs - &(f * &other.rhs) }
    }
}

/// Reduced row-echelon form of a system.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ncols: usize,
    /// Rows in their original order, fully reduced.
    pub rows: Vec<SparseRow>,
    /// `(column, row)` for each pivot, in column order.
    pub pivots: Vec<(usize, usize)>,
    /// Monic polynomials that were inverted through a pivot; the reduction
    /// is valid only where none of them vanishes.
    pub pivot_denominators: Vec<Poly>,
}

impl Rref {
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = alloc::vec![false; self.ncols];
        for &(c, _) in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// First row reading `0 = nonzero`.
    pub fn inconsistent_row(&self) -> Option<usize> {
        self.rows.iter().position(|r| r.is_empty() && !r.rhs.is_zero())
    }

    /// Particular solution with all free columns set to zero.
    pub fn particular(&self, nparams: usize) -> Vec<ParamScalar> {
        let mut u = alloc::vec![ParamScalar::zero(nparams); self.ncols];
        for &(c, r) in &self.pivots {
            u[c] = self.rows[r].rhs.clone();
        }
        u
    }

    /// Nullspace basis: one vector per free column, in column order.
    pub fn nullspace(&self, nparams: usize) -> Vec<Vec<ParamScalar>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut u = alloc::vec![ParamScalar::zero(nparams); self.ncols];
                u[f] = ParamScalar::one(nparams);
                for &(c, r) in &self.pivots {
                    if let Some(e) = self.rows[r].get(f) {
                        u[c] = -e;
                    }
                }
                u
            })
            .collect()
    }
}

/// Raised when a column's only nonzero candidates are zero divisors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroDivisorColumn(pub usize);

fn denominator_of(pivot: &ParamScalar) -> Option<Poly> {
    let p = if pivot.eps_part().is_zero() { pivot.base().clone() } else { pivot.norm() };
    if p.is_constant() {
        None
    } else {
        Some(p.monic())
    }
}

/// Gauss–Jordan elimination with columns processed left to right.
///
/// Pivot choice per column: parameter-free norm first, then the sparsest row,
/// then the lowest row index. Free columns are therefore the non-pivot
/// columns in order, which fixes the nullspace basis deterministically.
pub fn reduce(ncols: usize, mut rows: Vec<SparseRow>) -> Result<Rref, ZeroDivisorColumn> {
    let mut used = alloc::vec![false; rows.len()];
    let mut pivots = Vec::new();
    let mut pivot_denominators: Vec<Poly> = Vec::new();
    for col in 0..ncols {
        let mut best: Option<((bool, usize, usize), usize)> = None;
        let mut saw_zero_divisor = false;
        for (r, row) in rows.iter().enumerate() {
            if used[r] {
                continue;
            }
            let Some(e) = row.get(col) else { continue };
            let norm = e.norm();
            if norm.is_zero() {
                saw_zero_divisor = true;
                continue;
            }
            let key = (!norm.is_constant(), row.entries.len(), r);
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, r));
            }
        }
        let Some((_, p)) = best else {
            if saw_zero_divisor {
                return Err(ZeroDivisorColumn(col));
            }
            continue;
        };
        let pivot = rows[p].get(col).cloned().expect("pivot entry present");
        if let Some(d) = denominator_of(&pivot) {
            if !pivot_denominators.contains(&d) {
                pivot_denominators.push(d);
            }
        }
        let inv = pivot.inv().expect("unit pivot");
        rows[p].scale(&inv);
        used[p] = true;
        let prow = rows[p].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == p {
                continue;
            }
            if let Some(f) = row.get(col).cloned() {
                *row = row.sub_scaled(&f, &prow);
            }
        }
        pivots.push((col, p));
    }
    Ok(Rref { ncols, rows, pivots, pivot_denominators })
}
