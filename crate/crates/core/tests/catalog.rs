mod common;

use common::model;
use soliton_core::catalog::{self, IDS};
use soliton_core::geometry::{ParamDecl, SpaceModel};
use soliton_core::soliton::{ansatz_frequencies, default_ansatz, Ansatz, BasisFunction, LambdaMode};
use soliton_core::{CatalogError, ExpPoly, GeometryError, SolitonError, TermKey};

#[test]
fn every_entry_builds_and_self_tests() {
    assert_eq!(catalog::list().iter().map(|(id, _)| *id).collect::<Vec<_>>(), IDS);
    for id in IDS {
        let e = catalog::get(id).unwrap();
        assert_eq!(e.id, id);
        assert!(!e.solutions.is_empty());
    }
    assert!(matches!(catalog::get("gs4d"), Err(CatalogError::UnknownEntry(_))));
}

#[test]
fn free_constants_do_not_enter_the_metric() {
    for id in ["gs3d", "typeB"] {
        let e = catalog::get(id).unwrap();
        for &p in &e.solutions[0].free_constants {
            assert!(e.model.metric().iter().flatten().all(|g| !g.uses_param(p)), "{id}: param {p}");
        }
    }
}

#[test]
fn default_ansatz_sizes() {
    // Frequencies: sums of at most two of ±(metric frequencies).
    assert_eq!(ansatz_frequencies(&model("gs3d"), 2).len(), 5);
    assert_eq!(ansatz_frequencies(&model("typeB"), 2).len(), 13);
    assert_eq!(default_ansatz(&model("gs3d")).unwrap().ncols(), 3 * 5 * 10 + 1);
    assert_eq!(default_ansatz(&model("flat3")).unwrap().ncols(), 3 * 10 + 1);
}

#[test]
fn ansatz_validation() {
    let m = model("flat3");
    let k = TermKey::constant(3);
    let dup = vec![BasisFunction { component: 0, key: k.clone() }, BasisFunction { component: 0, key: k.clone() }];
    assert!(matches!(Ansatz::new(&m, dup, LambdaMode::Unknown), Err(SolitonError::DuplicateBasis { component: 0 })));
    let far = vec![BasisFunction { component: 3, key: k }];
    assert!(matches!(Ansatz::new(&m, far, LambdaMode::Unknown), Err(SolitonError::ComponentOutOfRange { .. })));
    let pinned = LambdaMode::Pinned(soliton_core::ParamScalar::zero(0));
    assert!(matches!(Ansatz::new(&m, vec![], pinned), Err(SolitonError::EmptyAnsatz)));
}

#[test]
fn degenerate_metrics_are_rejected() {
    let n = 2;
    let x = ExpPoly::coord(n, 0, 0);
    let one = ExpPoly::one(n, 0);
    let z = ExpPoly::zero(n, 0);
    let names = vec!["x".to_string(), "y".to_string()];
    let asym = vec![vec![one.clone(), one.clone()], vec![z.clone(), one.clone()]];
    assert!(matches!(SpaceModel::new(names.clone(), vec![], false, asym), Err(GeometryError::AsymmetricMetric { .. })));
    // det = x is not a unit of the exp-polynomial ring.
    let m = SpaceModel::new(names, vec![], false, vec![vec![x, z.clone()], vec![z, one]]).unwrap();
    assert!(matches!(
        soliton_core::geometry::Curvature::compute(&m),
        Err(GeometryError::NonMonomialDeterminant { .. })
    ));
}

#[test]
fn pinning_and_assignments() {
    let m = model("gs3d");
    let pinned = m.pin("mu", &num_rational::BigRational::from_integer(3.into())).unwrap();
    assert!(pinned.metric().iter().flatten().all(|g| !g.uses_param(0)));
    assert!(m.param_values(&[("mu", 1.0), ("eps", 0.5), ("A1", 0.0), ("A2", 0.0), ("A3", 0.0)]).is_err());
    assert!(m.param_values(&[("mu", 1.0)]).is_err());
    let ext = m.with_extra_params(&[ParamDecl::new("c", false)]);
    assert_eq!(ext.nparams(), m.nparams() + 1);
}
