//! Structural identities every computed connection and curvature must satisfy.
//! Each function lists the index tuples where the identity fails; an empty
//! list means the identity holds exactly.

use alloc::vec::Vec;

use super::{Connection, CurvatureSlices, SpaceModel};

/// `(∇ₖ g)ᵢⱼ = ∂ₖ gᵢⱼ − Γˡₖᵢ gₗⱼ − Γˡₖⱼ gᵢₗ`; returns `(k, i, j)` where nonzero.
pub fn metric_compatibility_defects(model: &SpaceModel, conn: &Connection) -> Vec<(usize, usize, usize)> {
    let n = model.dim();
    let g = model.metric();
    let mut out = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = g[i][j].diff(k);
                for l in 0..n {
                    acc = &acc - &(conn.get(l, k, i) * &g[l][j]);
                    acc = &acc - &(conn.get(l, k, j) * &g[i][l]);
                }
                if !acc.is_zero() {
                    out.push((k, i, j));
                }
            }
        }
    }
    out
}

/// Torsion `Γᵏᵢⱼ − Γᵏⱼᵢ`; returns `(k, i, j)` with `i < j` where nonzero.
pub fn torsion_defects(conn: &Connection) -> Vec<(usize, usize, usize)> {
    let n = conn.dim();
    let mut out = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                if conn.get(k, i, j) != conn.get(k, j, i) {
                    out.push((k, i, j));
                }
            }
        }
    }
    out
}

/// First Bianchi identity `R(∂ᵢ,∂ⱼ)∂ₖ + R(∂ⱼ,∂ₖ)∂ᵢ + R(∂ₖ,∂ᵢ)∂ⱼ = 0`;
/// returns `(i, j, k, l)` where the `∂ₗ` component is nonzero.
pub fn bianchi_defects(r: &CurvatureSlices) -> Vec<(usize, usize, usize, usize)> {
    let n = r.slices.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in 0..n {
                    let s = &(r.entry(i, j, l, k) + r.entry(j, k, l, i)) + r.entry(k, i, l, j);
                    if !s.is_zero() {
                        out.push((i, j, k, l));
                    }
                }
            }
        }
    }
    out
}

/// Antisymmetry `R(∂ᵢ,∂ⱼ) = −R(∂ⱼ,∂ᵢ)`; returns `(i, j)` where it fails.
pub fn antisymmetry_defects(r: &CurvatureSlices) -> Vec<(usize, usize)> {
    let n = r.slices.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let ok = (0..n).all(|l| (0..n).all(|k| (r.entry(i, j, l, k) + r.entry(j, i, l, k)).is_zero()));
            if !ok {
                out.push((i, j));
            }
        }
    }
    out
}
