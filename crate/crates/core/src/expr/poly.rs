//! Sparse multivariate polynomials over ℚ in the model parameters.
//!
//! Terms are kept sorted in strictly descending lexicographic order of their
//! exponent vectors (variable 0 most significant) with no zero coefficients,
//! so structural equality is mathematical equality.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Exponents, BigRational)>,
}

fn divides(small: &[u32], big: &[u32]) -> bool {
    small.iter().zip(big).all(|(a, b)| a <= b)
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(vec![0; nvars], c)] }
    }

    pub fn from_integer(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The polynomial consisting of the single variable `var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index {var} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[var] = 1;
        Poly { nvars, terms: vec![(e, BigRational::one())] }
    }

    pub fn monomial(exps: Exponents, c: BigRational) -> Self {
        let nvars = exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(exps, c)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unordered) terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigRational)>,
    {
        let mut acc: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            match acc.get_mut(&e) {
                Some(v) => *v += c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Self::from_sorted_map(nvars, acc)
    }

    fn from_sorted_map(nvars: usize, acc: BTreeMap<Exponents, BigRational>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponents, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns the value when the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(e, c)] if e.iter().all(|&x| x == 0) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(e, c)] if c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn leading(&self) -> Option<(&Exponents, &BigRational)> {
        self.terms.first().map(|(e, c)| (e, c))
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[var] > 0)
    }

    fn check(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomial variable count mismatch");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((eb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((ea.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    fn mul_term(&self, exps: &[u32], c: &BigRational) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, d)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), d * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.mul_term(e, c);
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.mul_term(e, c);
        }
        let mut acc: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        Self::from_sorted_map(self.nvars, acc)
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        self.check(divisor);
        let (dl_e, dl_c) = divisor.leading()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Exponents, BigRational)> = Vec::new();
        while let Some((re, rc)) = rem.leading() {
            if !divides(dl_e, re) {
                return None;
            }
            let te: Exponents = re.iter().zip(dl_e).map(|(a, b)| a - b).collect();
            let tc = rc / dl_c;
            rem = rem.sub(&divisor.mul_term(&te, &tc));
            // quotient terms are produced in descending order
            quot.push((te, tc));
        }
        Some(Poly { nvars: self.nvars, terms: quot })
    }

    /// Scales so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Coefficients with respect to `var`, indexed by degree; `var` is
    /// removed (exponent zero) from the returned polynomials.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Exponents, BigRational)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = core::mem::replace(&mut e2[var], 0) as usize;
            buckets[d].push((e2, c.clone()));
        }
        buckets.into_iter().map(|ts| Poly::from_terms(self.nvars, ts)).collect()
    }

    fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (d, c) in coeffs.iter().enumerate() {
            for (e, k) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += d as u32;
                terms.push((e2, k.clone()));
            }
        }
        Poly::from_terms(nvars, terms)
    }

    /// Greatest common divisor, normalized monic; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one(self.nvars);
        }
        if self == other {
            return self.monic();
        }
        // a variable present in exactly one operand: the gcd is free of it
        for v in 0..self.nvars {
            let (ua, ub) = (self.uses_var(v), other.uses_var(v));
            if ua != ub {
                let (with, without) = if ua { (self, other) } else { (other, self) };
                let mut g = without.clone();
                for c in with.coefficients_in(v) {
                    g = g.gcd(&c);
                    if g.is_one() {
                        break;
                    }
                }
                return g.monic();
            }
        }
        let v = (0..self.nvars).find(|&v| self.uses_var(v)).expect("non-constant polynomial uses some variable");
        let (cont_a, pa) = self.content_and_primitive(v);
        let (cont_b, pb) = other.content_and_primitive(v);
        let cont = cont_a.gcd(&cont_b);
        let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
        loop {
            let r = f.pseudo_rem(&g, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                g = Poly::one(self.nvars);
                break;
            }
            f = g;
            g = r.content_and_primitive(v).1;
        }
        cont.mul(&g.content_and_primitive(v).1).monic()
    }

    /// Content with respect to `var` (gcd of the coefficients) and the
    /// corresponding primitive part.
    fn content_and_primitive(&self, var: usize) -> (Poly, Poly) {
        let coeffs = self.coefficients_in(var);
        let mut cont = Poly::zero(self.nvars);
        for c in &coeffs {
            cont = cont.gcd(c);
            if cont.is_one() {
                break;
            }
        }
        if cont.is_one() || cont.is_zero() {
            return (Poly::one(self.nvars), self.monic());
        }
        let prim: Vec<Poly> =
            coeffs.iter().map(|c| c.div_exact(&cont).expect("content divides every coefficient")).collect();
        (cont, Poly::from_coefficients_in(self.nvars, var, &prim).monic())
    }

    fn pseudo_rem(&self, divisor: &Poly, var: usize) -> Poly {
        let dcoeffs = divisor.coefficients_in(var);
        let ddeg = dcoeffs.len() - 1;
        let lc = dcoeffs[ddeg].clone();
        let mut r = self.clone();
        loop {
            let rdeg = r.degree_in(var) as usize;
            if r.is_zero() || rdeg < ddeg {
                return r;
            }
            let rlc = r.coefficients_in(var).swap_remove(rdeg);
            let mut shift = vec![0; self.nvars];
            shift[var] = (rdeg - ddeg) as u32;
            let t = divisor.mul(&rlc).mul_term(&shift, &BigRational::one());
            r = r.mul(&lc).sub(&t);
        }
    }

    /// Replaces variable `var` by the rational value `value`.
    pub fn substitute(&self, var: usize, value: &BigRational) -> Poly {
        let coeffs = self.coefficients_in(var);
        let mut acc = Poly::zero(self.nvars);
        for c in coeffs.iter().rev() {
            acc = acc.scale(value).add(c);
        }
        acc
    }

    /// Appends `extra` unused variables.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        Poly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.resize(self.nvars + extra, 0);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, values: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (x, &k) in values.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// True when the leading coefficient is negative.
    pub fn leading_is_negative(&self) -> bool {
        self.terms.first().is_some_and(|(_, c)| c.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn arithmetic_cancels() {
        let a = x(2, 0).add(&Poly::from_integer(2, 3));
        assert!(a.sub(&a).is_zero());
        let sq = a.mul(&a);
        assert_eq!(sq.terms().len(), 3);
        assert_eq!(sq.div_exact(&a), Some(a.clone()));
        assert_eq!(x(2, 1).div_exact(&a), None);
    }

    #[test]
    fn gcd_univariate() {
        // (x+1)(x-2) and (x+1)(x+3)
        let n = 1;
        let f = x(n, 0).add(&Poly::one(n)).mul(&x(n, 0).sub(&Poly::from_integer(n, 2)));
        let g = x(n, 0).add(&Poly::one(n)).mul(&x(n, 0).add(&Poly::from_integer(n, 3)));
        assert_eq!(f.gcd(&g), x(n, 0).add(&Poly::one(n)));
    }

    #[test]
    fn gcd_multivariate_with_content() {
        let n = 3;
        let common = x(n, 0).mul(&x(n, 1)).add(&x(n, 2).scale(&q(1, 2)));
        let f = common.mul(&x(n, 1).add(&Poly::one(n))).mul(&x(n, 2));
        let g = common.mul(&x(n, 0).sub(&x(n, 2))).mul(&x(n, 2).pow(2));
        let expected = common.mul(&x(n, 2)).monic();
        assert_eq!(f.gcd(&g), expected);
    }

    #[test]
    fn gcd_coprime_and_disjoint_vars() {
        let n = 2;
        assert!(x(n, 0).gcd(&x(n, 1)).is_one());
        let f = x(n, 0).mul(&x(n, 1));
        assert_eq!(f.gcd(&x(n, 1).scale(&q(3, 1))), x(n, 1));
    }

    #[test]
    fn substitute_and_eval() {
        let n = 2;
        let f = x(n, 0).pow(2).add(&x(n, 1).scale(&q(1, 2)));
        let g = f.substitute(0, &q(3, 1));
        assert_eq!(g, x(n, 1).scale(&q(1, 2)).add(&Poly::from_integer(n, 9)));
        assert!((f.eval(&[2.0, 4.0]) - 6.0).abs() < 1e-15);
    }
}
