mod common;

use common::{model, values};
use soliton_core::catalog::IDS;
use soliton_core::geometry::Curvature;
use soliton_core::oracle::{
    compare, fd_christoffel, fd_ricci, ricci_error, run, sample_points, NumericScene, DEFAULT_ABS, DEFAULT_REL,
};
use soliton_core::{OracleError, ParamValues};

#[test]
fn gs3d_christoffel_at_a_point() {
    let m = model("gs3d");
    let scene = NumericScene::new(m.clone(), values(&m, 1.0, 1.0), vec![vec![0.3, -0.2, 0.1]]);
    let gamma = fd_christoffel(&scene).unwrap();
    // Γ³₁₁ = −(ε/μ)e^{2t}
    let want = -(0.2f64).exp();
    assert!((gamma[0][2][0][0] - want).abs() < 1e-8, "{}", gamma[0][2][0][0]);
    assert!((gamma[0][0][0][2] - 1.0).abs() < 1e-8);
}

#[test]
fn type_b_ricci_at_origin() {
    let m = model("typeB");
    let scene = NumericScene::new(m.clone(), values(&m, 1.0, 2.0), vec![vec![0.0; 4]]);
    let rho = fd_ricci(&scene).unwrap();
    assert!((rho[0][0][0] + 4.0 / 3.0).abs() < 1e-6);
    assert!((rho[0][0][1] + 2.0 / 3.0).abs() < 1e-6);
    assert!(rho[0][2][2].abs() < 1e-6);
}

#[test]
fn symbolic_and_numeric_agree_on_every_model() {
    for id in IDS {
        let m = model(id);
        let curv = Curvature::compute(&m).unwrap();
        for (eps, mu) in [(1.0, 1.0), (-1.0, 2.0)] {
            let pv = if m.nparams() == 0 { ParamValues::new(vec![], eps) } else { values(&m, eps, mu) };
            let scene = NumericScene::sampled(m.clone(), pv, 100, 11);
            let report = run(&scene, &curv).unwrap();
            assert_eq!(report.points, 100);
            assert!(report.pass(), "{id} at eps={eps} mu={mu}: {report:?}");
            assert!(report.christoffel.max_rel <= DEFAULT_REL);
            assert!(report.ricci.max_rel <= DEFAULT_REL);
        }
    }
}

#[test]
fn sign_flipped_ricci_fails() {
    let m = model("typeB");
    let mut curv = Curvature::compute(&m).unwrap();
    curv.ricci = curv.ricci.neg();
    let scene = NumericScene::sampled(m.clone(), values(&m, 1.0, 2.0), 5, 3);
    let report = run(&scene, &curv).unwrap();
    assert!(!report.ricci.pass);
    assert!(report.christoffel.pass);
}

#[test]
fn halving_the_step_quarters_the_error() {
    for id in ["gs3d", "typeB"] {
        let m = model(id);
        let curv = Curvature::compute(&m).unwrap();
        let scene = NumericScene::sampled(m.clone(), values(&m, 1.0, 1.0), 20, 5);
        let coarse = ricci_error(&scene.clone().with_step(1e-2), &curv).unwrap();
        let fine = ricci_error(&scene.with_step(5e-3), &curv).unwrap();
        let ratio = coarse / fine;
        assert!((3.5..=4.5).contains(&ratio), "{id}: ratio {ratio}");
    }
}

#[test]
fn sampling_is_seeded() {
    assert_eq!(sample_points(3, 4, 9), sample_points(3, 4, 9));
    assert_ne!(sample_points(3, 4, 9), sample_points(3, 4, 10));
    assert!(sample_points(4, 50, 1).iter().flatten().all(|v| (-1.0..=1.0).contains(v)));
}

#[test]
fn comparison_is_normwise() {
    let c = compare(&[1000.0, 0.0], &[1000.0, 1e-5], DEFAULT_REL, DEFAULT_ABS);
    assert!(c.pass);
    let c = compare(&[0.0, 0.0], &[0.0, 1e-8], DEFAULT_REL, DEFAULT_ABS);
    assert!(!c.pass);
}

#[test]
fn invalid_scenes_are_rejected() {
    let m = model("gs3d");
    let scene = NumericScene::sampled(m.clone(), values(&m, 1.0, 1.0), 2, 0).with_step(0.0);
    assert!(matches!(scene.validate(), Err(OracleError::InvalidScene(_))));
    let scene = NumericScene::sampled(m.clone(), ParamValues::new(vec![1.0], 1.0), 2, 0);
    assert!(matches!(scene.validate(), Err(OracleError::InvalidScene(_))));
    let degenerate = NumericScene::new(m.clone(), values(&m, 1.0, 0.0), vec![vec![0.0; 3]]);
    assert!(run(&degenerate, &Curvature::compute(&m).unwrap()).is_err());
}
