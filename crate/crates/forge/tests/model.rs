use soliton_core::catalog::{self, IDS};
use soliton_forge::cli::catalog_document;
use soliton_forge::resolve::EMBEDDED;
use soliton_forge::{format_model, model_hash, parse_expr, parse_model, Location, ParseErrorKind};

fn shipped(id: &str) -> &'static str {
    EMBEDDED.iter().find(|(name, _)| *name == id).unwrap().1
}

#[test]
fn shipped_files_match_catalog_constructors() {
    for id in IDS {
        let doc = parse_model(shipped(id)).unwrap();
        let expected = catalog_document(&catalog::get(id).unwrap());
        assert_eq!(doc.model, expected.model, "{id}: model");
        assert_eq!(doc.fields, expected.fields, "{id}: fields");
        assert_eq!(model_hash(&doc), model_hash(&expected));
    }
}

#[test]
fn shipped_files_round_trip_through_canonical_text() {
    for id in IDS {
        let doc = parse_model(shipped(id)).unwrap();
        let text = format_model(&doc);
        let back = parse_model(&text).unwrap();
        assert_eq!(back, doc, "{id}");
        assert_eq!(format_model(&back), text, "{id}: canonical text is a fixed point");
    }
}

#[test]
fn type_b_line_element_uses_symmetric_products() {
    let doc = parse_model(shipped("typeB")).unwrap();
    let s = doc.scope();
    let m = &doc.model;
    let g = |i: usize, j: usize| m.g(i - 1, j - 1).clone();
    assert_eq!(g(1, 1), parse_expr("mu", &s).unwrap());
    assert_eq!(g(1, 2), parse_expr("mu/2", &s).unwrap());
    assert_eq!(g(1, 3), parse_expr("exp(-x)/2", &s).unwrap());
    assert_eq!(g(3, 1), g(1, 3));
    assert_eq!(g(1, 4), parse_expr("exp(-y)", &s).unwrap());
    assert_eq!(g(2, 3), parse_expr("exp(-x)", &s).unwrap());
    assert_eq!(g(2, 4), parse_expr("exp(-y)/2", &s).unwrap());
    assert!(g(3, 3).is_zero() && g(3, 4).is_zero() && g(4, 4).is_zero());
}

#[test]
fn metric_block_and_line_element_agree() {
    let a = parse_model("dim 2\ncoords x y\nparams mu:nonzero\nline_element { mu*dx^2 + 2*exp(x)*dx*dy }\n").unwrap();
    let b =
        parse_model("dim 2\ncoords x y\nparams mu:nonzero\nmetric {\n g[1][1] = mu;\n g[1][2] = exp(x);\n}\n").unwrap();
    assert_eq!(a.model, b.model);
    assert_eq!(model_hash(&a), model_hash(&b));
}

#[test]
fn comments_and_layout_do_not_change_the_hash() {
    let a = parse_model(shipped("gs3d")).unwrap();
    let b = parse_model(&format!("# leading comment\n\n{}\n# trailing", shipped("gs3d"))).unwrap();
    assert_eq!(model_hash(&a), model_hash(&b));
    assert_eq!(model_hash(&a).len(), 64);
}

fn failure(text: &str) -> (Location, ParseErrorKind) {
    let e = parse_model(text).expect_err(text);
    (e.loc, e.kind)
}

type Case = (&'static str, (usize, usize), fn(&ParseErrorKind) -> bool);

#[test]
fn every_model_error_is_located() {
    let cases: Vec<Case> = vec![
        ("dim 3\ncoords x y\nmetric { g[1][1] = 1; }\n", (2, 1), |k| {
            matches!(k, ParseErrorKind::DimensionMismatch { expected: 3, found: 2 })
        }),
        ("dim 2\ncoords x x\nmetric { g[1][1] = 1; }\n", (2, 10), |k| matches!(k, ParseErrorKind::DuplicateName(_))),
        ("dim 2\ncoords x y\nparams x\nmetric { g[1][1] = 1; }\n", (3, 8), |k| {
            matches!(k, ParseErrorKind::DuplicateName(_))
        }),
        ("dim 2\ncoords x y\nparams mu:pm1\nmetric { g[1][1] = 1; }\n", (3, 8), |k| {
            matches!(k, ParseErrorKind::BadConstraint { .. })
        }),
        ("dim 2\ncoords x y\nparams eps:nonzero\nmetric { g[1][1] = 1; }\n", (3, 8), |k| {
            matches!(k, ParseErrorKind::BadConstraint { .. })
        }),
        ("dim 2\ncoords x y\nmetric {\n  g[3][1] = 1;\n}\n", (4, 5), |k| {
            matches!(k, ParseErrorKind::IndexOutOfRange { index: 3, dim: 2 })
        }),
        ("dim 2\ncoords x y\nmetric {\n  g[1][2] = 1;\n  g[2][1] = 1;\n}\n", (5, 3), |k| {
            matches!(k, ParseErrorKind::DuplicateEntry(_))
        }),
        ("dim 2\ncoords x y\nmetric {\n  g[1][1] = dx;\n}\n", (4, 13), |k| {
            matches!(k, ParseErrorKind::DifferentialOutsideLineElement(_))
        }),
        ("dim 2\ncoords x y\nline_element { dx*dy*dx }\n", (3, 21), |k| matches!(k, ParseErrorKind::NotQuadratic(3))),
        ("dim 2\ncoords x y\nline_element { dx + dy^2 }\n", (3, 19), |k| matches!(k, ParseErrorKind::NotQuadratic(_))),
        ("dim 2\ncoords x y\n", (3, 1), |k| matches!(k, ParseErrorKind::Missing(_))),
        ("coords x y\nmetric { g[1][1] = 1; }\n", (2, 1), |k| matches!(k, ParseErrorKind::Missing(_))),
        ("dim 2\ncoords x y\nmetric {\n  g[1][1] = exp(x*y);\n}\n", (4, 18), |k| {
            matches!(k, ParseErrorKind::NonRationalFrequency(_))
        }),
        ("dim 2\ncoords x y\nmetric {\n  g[1][1] = 1/x;\n}\n", (4, 15), |k| {
            matches!(k, ParseErrorKind::DivisionByNonUnit(_))
        }),
        ("dim 2\ncoords x y\nmetric {\n  g[1][1] = q;\n}\n", (4, 13), |k| {
            matches!(k, ParseErrorKind::UnknownSymbol(_))
        }),
        ("dim 2\ncoords x y\nmetric {\n  g[1][1] = 1\n}\n", (5, 1), |k| matches!(k, ParseErrorKind::Syntax(_))),
        ("dim 2\ncoords exp y\nmetric { g[1][1] = 1; }\n", (2, 8), |k| {
            matches!(k, ParseErrorKind::Syntax(_) | ParseErrorKind::DuplicateName(_))
        }),
        ("dim 2\ncoords x y\nmetric { g[1][1] = 1; }\nvectorfield X { X[1] = 1; X[1] = 2; }\n", (4, 27), |k| {
            matches!(k, ParseErrorKind::DuplicateEntry(_))
        }),
        ("dim 2\ncoords x y\nmetric { g[1][1] = 1; }\ndim 2\n", (4, 1), |k| matches!(k, ParseErrorKind::Syntax(_))),
    ];
    for (text, (line, col), check) in cases {
        let (loc, kind) = failure(text);
        assert!(check(&kind), "{text:?}: {kind:?}");
        assert_eq!((loc.line, loc.col), (line, col), "{text:?}: {kind}");
    }
}
