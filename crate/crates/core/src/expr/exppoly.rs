//! Exp-polynomials: finite sums of `coeff · x^mono · exp(⟨freq, x⟩)`.
//!
//! Products of coordinate monomials and exponentials of distinct linear forms
//! are linearly independent over the coefficient field, so a sum with unique
//! keys and no zero coefficients is a canonical form and the zero function is
//! exactly the empty sum.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};

use super::scalar::{ParamScalar, ParamValues};
use crate::error::{ContextError, EvalError};

/// Term key: the coordinate monomial and the exponential frequency vector.
///
/// Ordered lexicographically on `freq`, then graded-lex on `mono`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TermKey {
    pub freq: Vec<Rational64>,
    pub mono: Vec<u32>,
}

impl TermKey {
    pub fn constant(ncoords: usize) -> Self {
        TermKey { freq: vec![Rational64::zero(); ncoords], mono: vec![0; ncoords] }
    }

    pub fn degree(&self) -> u32 {
        self.mono.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.freq.iter().all(Zero::is_zero) && self.mono.iter().all(|&m| m == 0)
    }

    pub fn mul(&self, other: &TermKey) -> TermKey {
        TermKey {
            freq: self.freq.iter().zip(&other.freq).map(|(a, b)| a + b).collect(),
            mono: self.mono.iter().zip(&other.mono).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.freq
            .cmp(&other.freq)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.mono.cmp(&other.mono))
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpTerm {
    pub key: TermKey,
    pub coeff: ParamScalar,
}

impl ExpTerm {
    pub fn mono(&self) -> &[u32] {
        &self.key.mono
    }

    pub fn freq(&self) -> &[Rational64] {
        &self.key.freq
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpPoly {
    ncoords: usize,
    nparams: usize,
    terms: Vec<ExpTerm>,
}

fn rat64_to_big(r: &Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl ExpPoly {
    pub fn zero(ncoords: usize, nparams: usize) -> Self {
        ExpPoly { ncoords, nparams, terms: Vec::new() }
    }

    pub fn one(ncoords: usize, nparams: usize) -> Self {
        Self::constant(ncoords, ParamScalar::one(nparams))
    }

    pub fn constant(ncoords: usize, s: ParamScalar) -> Self {
        Self::term(ncoords, s, TermKey::constant(ncoords))
    }

    pub fn integer(ncoords: usize, nparams: usize, n: i64) -> Self {
        Self::constant(ncoords, ParamScalar::from_integer(nparams, n))
    }

    pub fn term(ncoords: usize, coeff: ParamScalar, key: TermKey) -> Self {
        assert_eq!(key.mono.len(), ncoords);
        assert_eq!(key.freq.len(), ncoords);
        let nparams = coeff.nparams();
        if coeff.is_zero() {
            return Self::zero(ncoords, nparams);
        }
        ExpPoly { ncoords, nparams, terms: vec![ExpTerm { key, coeff }] }
    }

    /// The coordinate function `x_i` (0-based).
    pub fn coord(ncoords: usize, nparams: usize, i: usize) -> Self {
        let mut key = TermKey::constant(ncoords);
        key.mono[i] = 1;
        Self::term(ncoords, ParamScalar::one(nparams), key)
    }

    /// `exp(⟨freq, x⟩)`.
    pub fn exp(nparams: usize, freq: Vec<Rational64>) -> Self {
        let n = freq.len();
        Self::term(n, ParamScalar::one(nparams), TermKey { freq, mono: vec![0; n] })
    }

    pub fn from_terms<I>(ncoords: usize, nparams: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (TermKey, ParamScalar)>,
    {
        let mut acc: BTreeMap<TermKey, ParamScalar> = BTreeMap::new();
        for (k, c) in terms {
            accumulate(&mut acc, k, c);
        }
        Self::from_map(ncoords, nparams, acc)
    }

    fn from_map(ncoords: usize, nparams: usize, acc: BTreeMap<TermKey, ParamScalar>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(key, coeff)| ExpTerm { key, coeff }).collect();
        ExpPoly { ncoords, nparams, terms }
    }

    pub fn ncoords(&self) -> usize {
        self.ncoords
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    /// Exact zero test: canonical emptiness.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &TermKey) -> ParamScalar {
        self.terms
            .binary_search_by(|t| t.key.cmp(key))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_else(|_| ParamScalar::zero(self.nparams))
    }

    /// The value as a coordinate-free scalar, if it is one.
    pub fn as_scalar(&self) -> Option<ParamScalar> {
        match self.terms.as_slice() {
            [] => Some(ParamScalar::zero(self.nparams)),
            [t] if t.key.is_constant() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    /// Multiplicative inverse when `self` is a unit of the ring, i.e. a
    /// single term `c·exp(⟨f, x⟩)` with invertible `c`.
    pub fn inverse_unit(&self) -> Option<ExpPoly> {
        match self.terms.as_slice() {
            [t] if t.key.mono.iter().all(|&m| m == 0) => {
                let c = t.coeff.inv()?;
                let key = TermKey { freq: t.key.freq.iter().map(|f| -f).collect(), mono: t.key.mono.clone() };
                Some(Self::term(self.ncoords, c, key))
            }
            _ => None,
        }
    }

    fn check(&self, other: &ExpPoly) -> Result<(), ContextError> {
        if self.ncoords == other.ncoords && self.nparams == other.nparams {
            Ok(())
        } else {
            Err(ContextError {
                left_coords: self.ncoords,
                left_params: self.nparams,
                right_coords: other.ncoords,
                right_params: other.nparams,
            })
        }
    }

    pub fn checked_add(&self, other: &ExpPoly) -> Result<ExpPoly, ContextError> {
        self.check(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.key.cmp(&b.key) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.coeff + &b.coeff;
                    if !c.is_zero() {
                        out.push(ExpTerm { key: a.key.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(ExpPoly { ncoords: self.ncoords, nparams: self.nparams, terms: out })
    }

    pub fn checked_sub(&self, other: &ExpPoly) -> Result<ExpPoly, ContextError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &ExpPoly) -> Result<ExpPoly, ContextError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ncoords, self.nparams));
        }
        let mut acc: BTreeMap<TermKey, ParamScalar> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                accumulate(&mut acc, a.key.mul(&b.key), &a.coeff * &b.coeff);
            }
        }
        Ok(Self::from_map(self.ncoords, self.nparams, acc))
    }

    pub fn scale(&self, s: &ParamScalar) -> ExpPoly {
        assert_eq!(s.nparams(), self.nparams, "parameter context mismatch");
        if s.is_zero() {
            return Self::zero(self.ncoords, self.nparams);
        }
        let terms = self.terms.iter().map(|t| ExpTerm { key: t.key.clone(), coeff: &t.coeff * s }).collect();
        ExpPoly { ncoords: self.ncoords, nparams: self.nparams, terms }
    }

    pub fn pow(&self, n: u32) -> ExpPoly {
        let mut acc = Self::one(self.ncoords, self.nparams);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to coordinate `i` (0-based).
    ///
    /// Panics if `i` is out of range.
    pub fn diff(&self, i: usize) -> ExpPoly {
        assert!(i < self.ncoords, "coordinate index {i} out of range");
        let mut acc: BTreeMap<TermKey, ParamScalar> = BTreeMap::new();
        for t in &self.terms {
            let m = t.key.mono[i];
            if m > 0 {
                let mut key = t.key.clone();
                key.mono[i] -= 1;
                accumulate(&mut acc, key, &t.coeff * &ParamScalar::from_integer(self.nparams, m as i64));
            }
            let f = &t.key.freq[i];
            if !f.is_zero() {
                let s = ParamScalar::from_rational(self.nparams, rat64_to_big(f));
                accumulate(&mut acc, t.key.clone(), &t.coeff * &s);
            }
        }
        Self::from_map(self.ncoords, self.nparams, acc)
    }

    /// Floating-point evaluation, term by term.
    pub fn eval(&self, point: &[f64], params: &ParamValues) -> Result<f64, EvalError> {
        if point.len() != self.ncoords {
            return Err(EvalError::PointDimension { expected: self.ncoords, found: point.len() });
        }
        if params.values.len() != self.nparams {
            return Err(EvalError::ParameterCount { expected: self.nparams, found: params.values.len() });
        }
        let mut acc = 0.0;
        for t in &self.terms {
            let c = t.coeff.eval(params)?;
            let mut lin = 0.0;
            let mut mono = 1.0;
            for (k, x) in point.iter().enumerate() {
                lin += t.key.freq[k].to_f64().unwrap_or(f64::NAN) * x;
                for _ in 0..t.key.mono[k] {
                    mono *= x;
                }
            }
            acc += c * mono * libm::exp(lin);
        }
        Ok(acc)
    }

    pub fn map_coeffs<F>(&self, nparams: usize, mut f: F) -> ExpPoly
    where
        F: FnMut(&ParamScalar) -> ParamScalar,
    {
        Self::from_terms(self.ncoords, nparams, self.terms.iter().map(|t| (t.key.clone(), f(&t.coeff))))
    }

    pub fn try_map_coeffs<F, E>(&self, nparams: usize, mut f: F) -> Result<ExpPoly, E>
    where
        F: FnMut(&ParamScalar) -> Result<ParamScalar, E>,
    {
        let mut acc: BTreeMap<TermKey, ParamScalar> = BTreeMap::new();
        for t in &self.terms {
            accumulate(&mut acc, t.key.clone(), f(&t.coeff)?);
        }
        Ok(Self::from_map(self.ncoords, nparams, acc))
    }

    /// Replaces parameter `index` by a rational value.
    pub fn substitute_param(&self, index: usize, value: &BigRational) -> Result<ExpPoly, EvalError> {
        self.try_map_coeffs(self.nparams, |c| c.substitute(index, value))
    }

    /// Re-homes the expression in a context with `extra` more parameters.
    pub fn extend_params(&self, extra: usize) -> ExpPoly {
        self.map_coeffs(self.nparams + extra, |c| c.extend_params(extra))
    }

    pub fn uses_param(&self, index: usize) -> bool {
        self.terms.iter().any(|t| t.coeff.uses_param(index))
    }
}

fn accumulate(acc: &mut BTreeMap<TermKey, ParamScalar>, key: TermKey, c: ParamScalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&key) {
        Some(v) => *v = &*v + &c,
        None => {
            acc.insert(key, c);
        }
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly {
            ncoords: self.ncoords,
            nparams: self.nparams,
            terms: self.terms.iter().map(|t| ExpTerm { key: t.key.clone(), coeff: -&t.coeff }).collect(),
        }
    }
}

impl Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        -&self
    }
}

// Operator forms panic on context mismatch; use the `checked_*` methods when
// operands may come from different models.
macro_rules! exppoly_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&ExpPoly> for &ExpPoly {
            type Output = ExpPoly;
            fn $m(self, rhs: &ExpPoly) -> ExpPoly {
                self.$checked(rhs).expect("exp-polynomial context mismatch")
            }
        }
        impl $tr<ExpPoly> for ExpPoly {
            type Output = ExpPoly;
            fn $m(self, rhs: ExpPoly) -> ExpPoly {
                (&self).$checked(&rhs).expect("exp-polynomial context mismatch")
            }
        }
        impl $tr<&ExpPoly> for ExpPoly {
            type Output = ExpPoly;
            fn $m(self, rhs: &ExpPoly) -> ExpPoly {
                (&self).$checked(rhs).expect("exp-polynomial context mismatch")
            }
        }
    };
}

exppoly_binop!(Add, add, checked_add);
exppoly_binop!(Sub, sub, checked_sub);
exppoly_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn e3(k: i64) -> ExpPoly {
        ExpPoly::exp(1, vec![r(0), r(0), r(k)])
    }

    #[test]
    fn additive_inverse_vanishes() {
        let a = e3(2);
        assert!((&a + &-&a).is_zero());
    }

    #[test]
    fn exponentials_multiply_to_one() {
        assert_eq!(&e3(2) * &e3(-2), ExpPoly::one(3, 1));
    }

    #[test]
    fn key_composition() {
        let x1 = ExpPoly::coord(3, 1, 0);
        let a = &x1 * &ExpPoly::exp(1, vec![r(-1), r(0), r(0)]);
        let b = ExpPoly::exp(1, vec![r(0), r(1), r(0)]);
        let prod = &a * &b;
        assert_eq!(prod.terms().len(), 1);
        let t = &prod.terms()[0];
        assert_eq!(t.mono(), &[1, 0, 0]);
        assert_eq!(t.freq(), &[r(-1), r(1), r(0)]);
    }

    #[test]
    fn product_rule() {
        let x1 = ExpPoly::coord(3, 1, 0);
        let f = &x1 * &ExpPoly::exp(1, vec![r(-1), r(0), r(0)]);
        let expected = &(&ExpPoly::one(3, 1) - &x1) * &ExpPoly::exp(1, vec![r(-1), r(0), r(0)]);
        assert_eq!(f.diff(0), expected);
        assert_eq!(e3(2).diff(2), e3(2).scale(&ParamScalar::from_integer(1, 2)));
    }

    #[test]
    fn linear_function_has_vanishing_second_derivative() {
        let x1 = ExpPoly::coord(3, 1, 0);
        let f = &(&x1 * &ExpPoly::constant(3, ParamScalar::param(1, 0))) + &ExpPoly::integer(3, 1, 7);
        assert!(f.diff(0).diff(0).is_zero());
    }

    #[test]
    fn distinct_keys_do_not_cancel() {
        assert!(!(&e3(2) - &e3(-2)).is_zero());
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = ExpPoly::one(3, 1);
        let b = ExpPoly::one(2, 1);
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&ExpPoly::one(3, 2)).is_err());
    }

    #[test]
    fn eval_with_parameters() {
        // ε·exp(2x₃)·(−2/μ) at the origin with ε = 1, μ = 1
        let mu_inv = ParamScalar::param(2, 0).inv().unwrap();
        let c = &(&ParamScalar::eps(2) * &mu_inv) * &ParamScalar::from_integer(2, -2);
        let f = ExpPoly::exp(2, vec![r(0), r(0), r(2)]).scale(&c);
        let v = f.eval(&[0.0, 0.0, 0.0], &ParamValues::new(vec![1.0, 0.0], 1.0)).unwrap();
        assert!((v + 2.0).abs() < 1e-15);
        let err = f.eval(&[0.0; 3], &ParamValues::new(vec![0.0, 0.0], 1.0));
        assert_eq!(err, Err(EvalError::DivisionByZero));
    }

    #[test]
    fn unit_inverse() {
        let u = e3(2).scale(&ParamScalar::param(1, 0));
        let inv = u.inverse_unit().unwrap();
        assert_eq!(&u * &inv, ExpPoly::one(3, 1));
        assert!(ExpPoly::coord(3, 1, 0).inverse_unit().is_none());
    }
}
