mod common;

use common::{inv_mu, model, Ctx};
use soliton_core::catalog::{self, IDS};
use soliton_core::geometry::invariants::{
    antisymmetry_defects, bianchi_defects, metric_compatibility_defects, torsion_defects,
};
use soliton_core::geometry::{lie_derivative_metric, Curvature, SymTensor, VectorField};
use soliton_core::soliton::{residual, verify};
use soliton_core::ExpPoly;

#[test]
fn gs3d_lie_derivative_check() {
    let m = model("gs3d");
    let k = Ctx::of(&m);
    let (x, _) = catalog::known_solution("gs3d").unwrap();
    let curv = Curvature::compute(&m).unwrap();
    let two_over_mu = &k.q(2, 1) * &inv_mu(&k);
    let expected = curv.ricci.neg().sub(&SymTensor::metric(&m).scale(&two_over_mu));
    assert_eq!(lie_derivative_metric(&m, &x), expected);
}

#[test]
fn known_solutions_have_zero_residual() {
    for id in ["gs3d", "typeB"] {
        let (x, lambda) = catalog::known_solution(id).unwrap();
        assert!(residual(&model(id), &x, &lambda).unwrap().is_zero(), "{id}");
    }
    let m = model("typeB");
    let k = Ctx::of(&m);
    let (x, _) = catalog::known_solution("typeB").unwrap();
    assert!(verify(&m, &x, &(&k.q(-4, 3) * &inv_mu(&k))).unwrap().holds);
    // The same field with a wrong constant is rejected.
    assert!(!verify(&m, &x, &(&k.q(-4, 1) * &inv_mu(&k))).unwrap().holds);
}

#[test]
fn invariants_vanish_on_every_catalog_model() {
    for id in IDS {
        let m = model(id);
        let curv = Curvature::compute(&m).unwrap();
        assert!(metric_compatibility_defects(&m, &curv.connection).is_empty(), "{id}: nabla g");
        assert!(torsion_defects(&curv.connection).is_empty(), "{id}: torsion");
        assert!(bianchi_defects(&curv.riemann).is_empty(), "{id}: first Bianchi");
        assert!(antisymmetry_defects(&curv.riemann).is_empty(), "{id}: R_ij = -R_ji");
        assert!(curv.ricci.is_symmetric(), "{id}: Ricci symmetry");
    }
}

/// `g(R(∂i,∂j)∂k, ∂l) = g(R(∂k,∂l)∂i, ∂j)`, checked on the lowered tensor.
#[test]
fn curvature_has_pair_symmetry() {
    for id in IDS {
        let m = model(id);
        let n = m.dim();
        let curv = Curvature::compute(&m).unwrap();
        let lowered = |i: usize, j: usize, k: usize, l: usize| -> ExpPoly {
            (0..n).fold(m.zero(), |acc, a| &acc + &(m.g(l, a) * curv.riemann.entry(i, j, a, k)))
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        assert_eq!(lowered(i, j, k, l), lowered(k, l, i, j), "{id}: ({i}{j}{k}{l})");
                    }
                }
            }
        }
    }
}

fn assert_operator(curv: &Curvature, k: &Ctx, i: usize, j: usize, expected: &[((usize, usize), ExpPoly)]) {
    for l in 0..k.n {
        for c in 0..k.n {
            let want = expected.iter().find(|(rc, _)| *rc == (l, c)).map_or_else(|| k.zero(), |(_, v)| v.clone());
            assert_eq!(curv.riemann.entry(i, j, l, c), &want, "R({i},{j}) row {l} col {c}");
        }
    }
}

#[test]
fn gs3d_curvature_operators() {
    let m = model("gs3d");
    let k = Ctx::of(&m);
    let curv = Curvature::compute(&m).unwrap();
    let em = &k.eps() * &inv_mu(&k);
    let up = k.e(&[0, 0, 2]).scale(&em);
    let down = k.e(&[0, 0, -2]).scale(&em);
    // The (2,1) entry of R(∂x,∂y) and the (3,2) entry of R(∂y,∂t) carry the
    // exponent forced by g(R(X,Y)Z,W) = −g(R(X,Y)W,Z).
    assert_operator(&curv, &k, 0, 1, &[((0, 1), down.clone()), ((1, 0), -&up)]);
    assert_operator(&curv, &k, 0, 2, &[((0, 2), k.int(-1)), ((2, 0), up)]);
    assert_operator(&curv, &k, 1, 2, &[((1, 2), k.int(-1)), ((2, 1), down)]);
}

#[test]
fn type_b_curvature_operators() {
    let m = model("typeB");
    let k = Ctx::of(&m);
    let curv = Curvature::compute(&m).unwrap();
    let t = |a: i64| k.c(k.q(a, 3));
    let exy = |a: i64| k.e(&[1, -1, 0, 0]).scale(&k.q(a, 3));
    let eyx = |a: i64| k.e(&[-1, 1, 0, 0]).scale(&k.q(a, 3));
    assert_operator(
        &curv,
        &k,
        0,
        1,
        &[
            ((0, 0), t(-1)),
            ((0, 1), t(-2)),
            ((1, 0), t(2)),
            ((1, 1), t(1)),
            ((2, 2), t(1)),
            ((2, 3), exy(2)),
            ((3, 2), eyx(-2)),
            ((3, 3), t(-1)),
        ],
    );
    assert_operator(&curv, &k, 0, 2, &[((2, 0), t(2)), ((2, 1), t(1)), ((3, 0), eyx(-1)), ((3, 1), eyx(-2))]);
    assert_operator(&curv, &k, 1, 3, &[((2, 0), exy(-2)), ((2, 1), exy(-1)), ((3, 0), t(1)), ((3, 1), t(2))]);
    for (i, j) in [(0, 3), (1, 2), (2, 3)] {
        assert_operator(&curv, &k, i, j, &[]);
    }
}

#[test]
fn coordinate_killing_fields() {
    for (id, killing) in [("gs3d", [0, 1]), ("typeB", [2, 3])] {
        let m = model(id);
        for i in killing {
            assert!(lie_derivative_metric(&m, &VectorField::coordinate(&m, i)).is_zero(), "{id}: d/dx{i}");
        }
    }
    // ∂t on gs3d and ∂x on typeB are not Killing.
    assert!(!lie_derivative_metric(&model("gs3d"), &VectorField::coordinate(&model("gs3d"), 2)).is_zero());
    assert!(!lie_derivative_metric(&model("typeB"), &VectorField::coordinate(&model("typeB"), 0)).is_zero());
}

#[test]
fn type_b_has_two_non_translation_killing_fields() {
    let m = model("typeB");
    let k = Ctx::of(&m);
    let a = k.field(vec![k.int(1), k.zero(), k.x(2), k.zero()]);
    let b = k.field(vec![k.zero(), k.int(1), k.zero(), k.x(3)]);
    assert!(lie_derivative_metric(&m, &a).is_zero());
    assert!(lie_derivative_metric(&m, &b).is_zero());
}
