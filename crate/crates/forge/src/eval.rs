//! Evaluation of parsed expressions into exp-polynomials.

use std::collections::BTreeMap;

use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use soliton_core::{ExpPoly, ParamScalar};

use crate::error::{ParseError, ParseErrorKind};
use crate::format::format_expoly;
use crate::lexer::tokenize;
use crate::lexer::Tok;
use crate::parser::{Cursor, Expr, ExprKind};

/// Names visible to an expression. `eps` is available only when declared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scope {
    pub coords: Vec<String>,
    pub params: Vec<String>,
    pub eps: bool,
}

impl Scope {
    pub fn new(coords: &[&str], params: &[&str], eps: bool) -> Self {
        Scope {
            coords: coords.iter().map(|s| s.to_string()).collect(),
            params: params.iter().map(|s| s.to_string()).collect(),
            eps,
        }
    }

    pub fn of_model(m: &soliton_core::SpaceModel) -> Self {
        Scope {
            coords: m.coords().to_vec(),
            params: m.params().iter().map(|p| p.name.clone()).collect(),
            eps: m.uses_eps(),
        }
    }

    pub fn ncoords(&self) -> usize {
        self.coords.len()
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    fn differential(&self, name: &str) -> Option<usize> {
        name.strip_prefix('d').and_then(|c| self.coords.iter().position(|x| x == c))
    }
}

/// A polynomial in the coordinate differentials of degree ≤ 2 whose
/// coefficients are exp-polynomials. Keys are sorted index lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffValue {
    pub parts: BTreeMap<Vec<usize>, ExpPoly>,
}

impl DiffValue {
    fn plain(e: ExpPoly) -> Self {
        let mut parts = BTreeMap::new();
        if !e.is_zero() {
            parts.insert(Vec::new(), e);
        }
        DiffValue { parts }
    }

    fn plain_part(&self, scope: &Scope) -> Option<ExpPoly> {
        match self.parts.len() {
            0 => Some(ExpPoly::zero(scope.ncoords(), scope.nparams())),
            1 => self.parts.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn add(&self, other: &DiffValue, sign: i64) -> DiffValue {
        let mut parts = self.parts.clone();
        for (k, v) in &other.parts {
            let v = if sign < 0 { -v } else { v.clone() };
            let e = match parts.remove(k) {
                Some(a) => &a + &v,
                None => v,
            };
            if !e.is_zero() {
                parts.insert(k.clone(), e);
            }
        }
        DiffValue { parts }
    }

    fn mul(&self, other: &DiffValue) -> Result<DiffValue, usize> {
        let mut parts: BTreeMap<Vec<usize>, ExpPoly> = BTreeMap::new();
        for (ka, a) in &self.parts {
            for (kb, b) in &other.parts {
                let mut k = ka.clone();
                k.extend_from_slice(kb);
                if k.len() > 2 {
                    return Err(k.len());
                }
                k.sort_unstable();
                let p = a * b;
                let e = match parts.remove(&k) {
                    Some(x) => &x + &p,
                    None => p,
                };
                if !e.is_zero() {
                    parts.insert(k, e);
                }
            }
        }
        Ok(DiffValue { parts })
    }
}

struct Evaluator<'a> {
    scope: &'a Scope,
    differentials: bool,
}

fn to_rational64(q: &BigRational) -> Option<Rational64> {
    Some(Rational64::new(q.numer().to_i64()?, q.denom().to_i64()?))
}

impl Evaluator<'_> {
    fn zero(&self) -> ExpPoly {
        ExpPoly::zero(self.scope.ncoords(), self.scope.nparams())
    }

    fn scalar(&self, s: ParamScalar) -> ExpPoly {
        ExpPoly::constant(self.scope.ncoords(), s)
    }

    fn plain(&self, v: &DiffValue, e: &Expr) -> Result<ExpPoly, ParseError> {
        v.plain_part(self.scope).ok_or_else(|| {
            ParseError::new(e.loc, ParseErrorKind::Syntax("differentials cannot appear here".to_string()))
        })
    }

    fn eval(&self, e: &Expr) -> Result<DiffValue, ParseError> {
        let n = self.scope.ncoords();
        let np = self.scope.nparams();
        Ok(match &e.kind {
            ExprKind::Int(v) => {
                DiffValue::plain(self.scalar(ParamScalar::from_rational(np, BigRational::from_integer(v.clone()))))
            }
            ExprKind::Name(name) => {
                if let Some(i) = self.scope.coords.iter().position(|c| c == name) {
                    DiffValue::plain(ExpPoly::coord(n, np, i))
                } else if let Some(i) = self.scope.params.iter().position(|c| c == name) {
                    DiffValue::plain(self.scalar(ParamScalar::param(np, i)))
                } else if name == "eps" && self.scope.eps {
                    DiffValue::plain(self.scalar(ParamScalar::eps(np)))
                } else if let Some(i) = self.scope.differential(name) {
                    if !self.differentials {
                        return Err(ParseError::new(
                            e.loc,
                            ParseErrorKind::DifferentialOutsideLineElement(name.clone()),
                        ));
                    }
                    let mut parts = BTreeMap::new();
                    parts.insert(vec![i], ExpPoly::one(n, np));
                    DiffValue { parts }
                } else {
                    return Err(ParseError::new(e.loc, ParseErrorKind::UnknownSymbol(name.clone())));
                }
            }
            ExprKind::Neg(a) => DiffValue::plain(self.zero()).add(&self.eval(a)?, -1),
            ExprKind::Add(a, b) => self.eval(a)?.add(&self.eval(b)?, 1),
            ExprKind::Sub(a, b) => self.eval(a)?.add(&self.eval(b)?, -1),
            ExprKind::Mul(a, b) => self
                .eval(a)?
                .mul(&self.eval(b)?)
                .map_err(|d| ParseError::new(e.loc, ParseErrorKind::NotQuadratic(d)))?,
            ExprKind::Div(a, b) => {
                let num = self.eval(a)?;
                let den = self.eval(b)?;
                let den = self.plain(&den, b)?;
                let inv = den.inverse_unit().ok_or_else(|| {
                    ParseError::new(b.loc, ParseErrorKind::DivisionByNonUnit(format_expoly(&den, self.scope)))
                })?;
                num.mul(&DiffValue::plain(inv)).expect("degree unchanged")
            }
            ExprKind::Pow(a, k) => {
                let base = self.eval(a)?;
                let base = if *k < 0 {
                    let p = self.plain(&base, a)?;
                    DiffValue::plain(p.inverse_unit().ok_or_else(|| {
                        ParseError::new(a.loc, ParseErrorKind::DivisionByNonUnit(format_expoly(&p, self.scope)))
                    })?)
                } else {
                    base
                };
                let mut acc = DiffValue::plain(ExpPoly::one(n, np));
                for _ in 0..k.unsigned_abs() {
                    acc = acc.mul(&base).map_err(|d| ParseError::new(e.loc, ParseErrorKind::NotQuadratic(d)))?;
                }
                acc
            }
            ExprKind::Exp(a) => {
                let arg = self.eval(a)?;
                let arg = self.plain(&arg, a)?;
                DiffValue::plain(ExpPoly::exp(np, self.frequency(&arg, a)?))
            }
        })
    }

    /// The frequency vector of a rational linear form without constant term.
    fn frequency(&self, arg: &ExpPoly, at: &Expr) -> Result<Vec<Rational64>, ParseError> {
        let bad = |why: String| ParseError::new(at.loc, ParseErrorKind::NonRationalFrequency(why));
        let mut freq = vec![Rational64::zero(); self.scope.ncoords()];
        for t in arg.terms() {
            if t.freq().iter().any(|q| !q.is_zero()) {
                return Err(bad("nested exponential".to_string()));
            }
            let c = t.coeff.as_rational().ok_or_else(|| bad("coefficient depends on a parameter".to_string()))?;
            let deg: u32 = t.mono().iter().sum();
            match deg {
                0 => return Err(bad("nonzero constant term".to_string())),
                1 => {
                    let i = t.mono().iter().position(|&m| m == 1).expect("degree one");
                    freq[i] = to_rational64(&c).ok_or_else(|| bad("coefficient too large".to_string()))?;
                }
                _ => return Err(bad("term of degree greater than one".to_string())),
            }
        }
        Ok(freq)
    }
}

/// Parses a complete expression (no differentials).
pub fn parse_expr(text: &str, scope: &Scope) -> Result<ExpPoly, ParseError> {
    let mut cur = Cursor::new(tokenize(text)?);
    let e = cur.expr()?;
    let t = cur.advance();
    if t.tok != Tok::Eof {
        return Err(ParseError::syntax(t.loc, format!("unexpected {} after expression", t.tok.describe())));
    }
    eval_plain(&e, scope)
}

/// Parses an expression that must not depend on the coordinates.
pub fn parse_scalar(text: &str, scope: &Scope) -> Result<ParamScalar, ParseError> {
    let e = parse_expr(text, scope)?;
    scalar_of(&e, scope, crate::error::Location { line: 1, col: 1 })
}

pub(crate) fn scalar_of(e: &ExpPoly, scope: &Scope, loc: crate::error::Location) -> Result<ParamScalar, ParseError> {
    e.as_scalar().ok_or_else(|| {
        let t = e.terms().iter().find(|t| !t.key.is_constant()).expect("non-constant term");
        let name = t
            .mono()
            .iter()
            .zip(t.freq())
            .position(|(m, f)| *m > 0 || !f.is_zero())
            .map(|i| scope.coords[i].clone())
            .unwrap_or_default();
        ParseError::new(loc, ParseErrorKind::NotConstant(name))
    })
}

pub(crate) fn eval_plain(e: &Expr, scope: &Scope) -> Result<ExpPoly, ParseError> {
    let ev = Evaluator { scope, differentials: false };
    let v = ev.eval(e)?;
    ev.plain(&v, e)
}

pub(crate) fn eval_differential(e: &Expr, scope: &Scope) -> Result<DiffValue, ParseError> {
    Evaluator { scope, differentials: true }.eval(e)
}
