use num_rational::Rational64;
use proptest::prelude::*;
use soliton_core::{ExpPoly, ParamScalar, TermKey};
use soliton_forge::{format_expoly, format_scalar, parse_expr, parse_scalar, Location, ParseErrorKind, Scope};

fn gs_scope() -> Scope {
    Scope::new(&["x", "y", "t"], &["mu", "A1"], true)
}

fn kind(text: &str) -> (Location, ParseErrorKind) {
    let e = parse_expr(text, &gs_scope()).expect_err(text);
    (e.loc, e.kind)
}

#[test]
fn parses_signed_exponentials() {
    let s = gs_scope();
    let e = parse_expr("eps*exp(2*t)", &s).unwrap();
    let want = ExpPoly::exp(2, vec![0.into(), 0.into(), 2.into()]).scale(&ParamScalar::eps(2));
    assert_eq!(e, want);
    assert_eq!(format_expoly(&e, &s), "eps*exp(2*t)");
}

#[test]
fn constant_folding_and_equivalent_spellings() {
    let s = gs_scope();
    let a = parse_expr("exp(-x)*(1 + 2*0)", &s).unwrap();
    assert_eq!(a, parse_expr("exp(-x)", &s).unwrap());
    assert_eq!(parse_expr("exp(x)*exp(-x)", &s).unwrap(), parse_expr("1", &s).unwrap());
    assert_eq!(parse_expr("exp(x/2)^2", &s).unwrap(), parse_expr("exp(x)", &s).unwrap());
    assert_eq!(parse_expr("(x + 1)^2 - x^2 - 2*x", &s).unwrap(), parse_expr("1", &s).unwrap());
    assert_eq!(parse_expr("1/exp(2*t)", &s).unwrap(), parse_expr("exp(-2*t)", &s).unwrap());
    assert_eq!(parse_expr("x/mu*mu", &s).unwrap(), parse_expr("x", &s).unwrap());
    assert_eq!(parse_expr("-2^2", &s).unwrap(), parse_expr("-4", &s).unwrap());
    assert_eq!(parse_expr("mu^-1*mu", &s).unwrap(), parse_expr("1", &s).unwrap());
}

#[test]
fn scalars_reject_coordinates() {
    let s = gs_scope();
    assert_eq!(
        parse_scalar("-2/mu", &s).unwrap(),
        &ParamScalar::from_integer(2, -2) * &ParamScalar::param(2, 0).inv().unwrap()
    );
    assert!(matches!(parse_scalar("x", &s).unwrap_err().kind, ParseErrorKind::NotConstant(_)));
}

type Case = (&'static str, Location, fn(&ParseErrorKind) -> bool);

#[test]
fn every_expression_error_is_located() {
    let cases: Vec<Case> = vec![
        ("exp(x*y)", Location { line: 1, col: 6 }, |k| matches!(k, ParseErrorKind::NonRationalFrequency(_))),
        ("exp(mu*x)", Location { line: 1, col: 7 }, |k| matches!(k, ParseErrorKind::NonRationalFrequency(_))),
        ("exp(x + 1)", Location { line: 1, col: 7 }, |k| matches!(k, ParseErrorKind::NonRationalFrequency(_))),
        ("1 + z", Location { line: 1, col: 5 }, |k| matches!(k, ParseErrorKind::UnknownSymbol(_))),
        ("sin(x)", Location { line: 1, col: 1 }, |k| matches!(k, ParseErrorKind::UnknownSymbol(_))),
        ("1/x", Location { line: 1, col: 3 }, |k| matches!(k, ParseErrorKind::DivisionByNonUnit(_))),
        ("1/(1 + eps)", Location { line: 1, col: 6 }, |k| matches!(k, ParseErrorKind::DivisionByNonUnit(_))),
        ("2*dx", Location { line: 1, col: 3 }, |k| matches!(k, ParseErrorKind::DifferentialOutsideLineElement(_))),
        ("x +", Location { line: 1, col: 4 }, |k| matches!(k, ParseErrorKind::Syntax(_))),
        ("x^y", Location { line: 1, col: 3 }, |k| matches!(k, ParseErrorKind::Syntax(_))),
        ("x^2^2", Location { line: 1, col: 4 }, |k| matches!(k, ParseErrorKind::Syntax(_))),
        ("(x", Location { line: 1, col: 3 }, |k| matches!(k, ParseErrorKind::Syntax(_))),
        ("2x", Location { line: 1, col: 2 }, |k| matches!(k, ParseErrorKind::Syntax(_))),
        ("1.5", Location { line: 1, col: 2 }, |k| matches!(k, ParseErrorKind::Syntax(_))),
    ];
    for (text, loc, check) in cases {
        let (got_loc, got) = kind(text);
        assert!(check(&got), "{text}: {got:?}");
        assert_eq!(got_loc, loc, "{text}: {got}");
    }
}

fn scalar(np: usize) -> impl Strategy<Value = ParamScalar> {
    (-6i64..=6, -3i64..=3, -2i64..=2, 0usize..3).prop_map(move |(a, b, c, den)| {
        let mu = ParamScalar::param(np, 0);
        let a1 = ParamScalar::param(np, 1);
        let num = &(&ParamScalar::from_ratio(np, a, 3) + &(&a1 * &ParamScalar::from_integer(np, b)))
            + &(&ParamScalar::eps(np) * &ParamScalar::from_integer(np, c));
        match den {
            0 => num,
            1 => &num * &mu.inv().unwrap(),
            _ => &num * &(&mu + &ParamScalar::from_integer(np, 2)).inv().unwrap(),
        }
    })
}

fn expoly() -> impl Strategy<Value = ExpPoly> {
    let key = (proptest::collection::vec(-4i64..=4, 3), proptest::collection::vec(0u32..=3, 3))
        .prop_map(|(f, mono)| TermKey { freq: f.into_iter().map(|k| Rational64::new(k, 2)).collect(), mono });
    proptest::collection::vec((key, scalar(2)), 0..5).prop_map(|t| ExpPoly::from_terms(3, 2, t))
}

/// Random expression text built from the full grammar.
fn text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0i64..20).prop_map(|n| n.to_string()),
        prop::sample::select(vec!["x", "y", "t", "mu", "A1", "eps"]).prop_map(String::from),
        (-3i64..=3, -3i64..=3, 1i64..=3).prop_map(|(a, b, d)| format!("exp(({a}*x - {b}*t)/{d})")),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
            inner.clone().prop_map(|a| format!("-{a}")),
            (inner.clone(), 0u32..3).prop_map(|(a, k)| format!("({a})^{k}")),
            (inner.clone(), prop::sample::select(vec!["mu", "2", "exp(y)", "(mu + 1)", "-3"]))
                .prop_map(|(a, d)| format!("{a}/{d}")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn format_then_parse_is_identity(e in expoly()) {
        let s = Scope::new(&["x", "y", "t"], &["mu", "A1"], true);
        let text = format_expoly(&e, &s);
        let back = parse_expr(&text, &s).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back, e, "{}", text);
    }

    #[test]
    fn random_text_round_trips(t in text()) {
        let s = gs_scope();
        let e = parse_expr(&t, &s).map_err(|err| TestCaseError::fail(format!("{t}: {err}")))?;
        let canon = format_expoly(&e, &s);
        prop_assert_eq!(parse_expr(&canon, &s).unwrap(), e.clone());
        let again = format_expoly(&parse_expr(&canon, &s).unwrap(), &s);
        prop_assert_eq!(again, canon);
    }

    #[test]
    fn scalars_round_trip(c in scalar(2)) {
        let s = gs_scope();
        let text = format_scalar(&c, &s);
        prop_assert_eq!(parse_scalar(&text, &s).unwrap(), c, "{}", text);
    }
}
