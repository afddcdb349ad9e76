//! Canonical text for scalars, exp-polynomials, fields and models.
//!
//! Output is always valid input for the expression grammar, and formatting
//! canonical values is deterministic, so `parse(format(e)) == e`.

use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use soliton_core::{ExpPoly, ParamScalar, Poly, TermKey};

use crate::eval::Scope;

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn format_r64(q: &Rational64) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A signed product `c · factors`.
struct Mono {
    coeff: BigRational,
    factors: Vec<String>,
}

impl Mono {
    /// The magnitude part, e.g. `2*mu^2`, `mu`, `1/2`.
    fn body(&self) -> String {
        let c = self.coeff.abs();
        if self.factors.is_empty() {
            return format_rational(&c);
        }
        let f = self.factors.join("*");
        if c.is_one() {
            f
        } else {
            format!("{}*{f}", format_rational(&c))
        }
    }
}

fn power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

fn poly_monos(p: &Poly, names: &[String], extra: Option<&str>) -> Vec<Mono> {
    p.terms()
        .iter()
        .map(|(exps, c)| {
            let mut factors: Vec<String> =
                exps.iter().zip(names).filter(|(e, _)| **e > 0).map(|(e, n)| power(n, *e)).collect();
            if let Some(x) = extra {
                factors.push(x.to_string());
            }
            Mono { coeff: c.clone(), factors }
        })
        .collect()
}

fn join_signed(monos: &[Mono], negate: bool) -> String {
    let mut s = String::new();
    for (k, m) in monos.iter().enumerate() {
        let neg = m.coeff.is_negative() != negate;
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&m.body());
    }
    s
}

fn numerator_monos(s: &ParamScalar, scope: &Scope) -> Vec<Mono> {
    let mut m = poly_monos(s.base(), &scope.params, None);
    m.extend(poly_monos(s.eps_part(), &scope.params, Some("eps")));
    m
}

/// Splits a nonzero scalar into `(negative, magnitude text)` where the text
/// can be followed by `*factor` without changing meaning.
fn scalar_parts(s: &ParamScalar, scope: &Scope) -> (bool, String) {
    let num = numerator_monos(s, scope);
    let neg = num[0].coeff.is_negative();
    let mut text = if num.len() == 1 { num[0].body() } else { format!("({})", join_signed(&num, neg)) };
    let den = s.den();
    if !den.is_one() {
        let dm = poly_monos(den, &scope.params, None);
        let d = if dm.len() == 1 && dm[0].coeff.is_one() && dm[0].factors.len() == 1 {
            dm[0].factors[0].clone()
        } else {
            format!("({})", join_signed(&dm, false))
        };
        text = format!("{text}/{d}");
    }
    (neg, text)
}

pub fn format_scalar(s: &ParamScalar, scope: &Scope) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let (neg, text) = scalar_parts(s, scope);
    if neg {
        format!("-{text}")
    } else {
        text
    }
}

fn linear_form(freq: &[Rational64], scope: &Scope) -> String {
    let mut s = String::new();
    for (i, q) in freq.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
        let neg = *q < Rational64::zero();
        let a = q.abs();
        let body = if a == Rational64::one() {
            scope.coords[i].clone()
        } else {
            format!("{}*{}", format_r64(&a), scope.coords[i])
        };
        match (s.is_empty(), neg) {
            (true, true) => s.push('-'),
            (true, false) => {}
            (false, true) => s.push_str(" - "),
            (false, false) => s.push_str(" + "),
        }
        s.push_str(&body);
    }
    s
}

fn key_factors(key: &TermKey, scope: &Scope) -> Vec<String> {
    let mut f: Vec<String> =
        key.mono.iter().zip(&scope.coords).filter(|(e, _)| **e > 0).map(|(e, n)| power(n, *e)).collect();
    if key.freq.iter().any(|q| !q.is_zero()) {
        f.push(format!("exp({})", linear_form(&key.freq, scope)));
    }
    f
}

/// `(negative, magnitude text)` for one term.
fn term_parts(coeff: &ParamScalar, key: &TermKey, scope: &Scope) -> (bool, String) {
    let factors = key_factors(key, scope);
    if let Some(q) = coeff.as_rational() {
        let m = Mono { coeff: q.clone(), factors };
        return (q.is_negative(), m.body());
    }
    let (neg, c) = scalar_parts(coeff, scope);
    if factors.is_empty() {
        (neg, c)
    } else {
        (neg, format!("{c}*{}", factors.join("*")))
    }
}

pub fn format_expoly(e: &ExpPoly, scope: &Scope) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, t) in e.terms().iter().enumerate() {
        let (neg, body) = term_parts(&t.coeff, &t.key, scope);
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&body);
    }
    s
}

/// Human-oriented rendering of a term key, e.g. `x^2*exp(-y)` or `1`.
pub fn format_key(key: &TermKey, scope: &Scope) -> String {
    let f = key_factors(key, scope);
    if f.is_empty() {
        "1".to_string()
    } else {
        f.join("*")
    }
}

/// A polynomial in the parameters, e.g. a pivot denominator.
pub fn format_poly(p: &Poly, scope: &Scope) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    join_signed(&poly_monos(p, &scope.params, None), false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::parse_expr;

    fn round(text: &str, scope: &Scope) -> String {
        format_expoly(&parse_expr(text, scope).unwrap(), scope)
    }

    #[test]
    fn canonical_spellings() {
        let s = Scope::new(&["x", "y", "t"], &["mu", "A3"], true);
        assert_eq!(round("exp(2*t)*eps*(-1)/mu", &s), "-eps/mu*exp(2*t)");
        assert_eq!(round("9/16*exp(-x)*exp(-x - 2*y)", &s), "9/16*exp(-2*x - 2*y)");
        assert_eq!(round("mu*exp(x)/3", &s), "1/3*mu*exp(x)");
        assert_eq!(round("(A3 + 1/mu)*x", &s), "(mu*A3 + 1)/mu*x");
        assert_eq!(round("x^2 - x + 0", &s), "-x + x^2");
        assert_eq!(round("0*exp(t)", &s), "0");
    }
}
