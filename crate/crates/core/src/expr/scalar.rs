//! Exact coefficients: rational functions over ℚ in the model parameters,
//! with the sign symbol ε adjoined (ε² = 1).
//!
//! A value is stored as `(base + eps_part·ε) / den` where `base`, `eps_part`
//! and `den` are ε-free polynomials. Any denominator containing ε can be
//! rationalized with its conjugate, so keeping `den` ε-free costs nothing and
//! makes the form canonical: `den` is monic and `gcd(base, eps_part, den) = 1`.

use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::poly::Poly;
use crate::error::EvalError;

/// Numeric assignment of the parameters of a context.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamValues {
    pub values: alloc::vec::Vec<f64>,
    /// Value of ε; must be ±1.
    pub eps: f64,
}

impl ParamValues {
    pub fn new(values: alloc::vec::Vec<f64>, eps: f64) -> Self {
        ParamValues { values, eps }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamScalar {
    base: Poly,
    eps_part: Poly,
    den: Poly,
}

impl ParamScalar {
    pub fn zero(nparams: usize) -> Self {
        ParamScalar { base: Poly::zero(nparams), eps_part: Poly::zero(nparams), den: Poly::one(nparams) }
    }

    pub fn one(nparams: usize) -> Self {
        Self::from_poly(Poly::one(nparams))
    }

    pub fn from_rational(nparams: usize, q: BigRational) -> Self {
        Self::from_poly(Poly::constant(nparams, q))
    }

    pub fn from_integer(nparams: usize, n: i64) -> Self {
        Self::from_poly(Poly::from_integer(nparams, n))
    }

    pub fn from_ratio(nparams: usize, num: i64, den: i64) -> Self {
        Self::from_rational(nparams, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        ParamScalar { base: p, eps_part: Poly::zero(n), den: Poly::one(n) }
    }

    pub fn param(nparams: usize, index: usize) -> Self {
        Self::from_poly(Poly::var(nparams, index))
    }

    pub fn eps(nparams: usize) -> Self {
        ParamScalar { base: Poly::zero(nparams), eps_part: Poly::one(nparams), den: Poly::one(nparams) }
    }

    /// Builds `(base + eps_part·ε) / den` in canonical form.
    ///
    /// Panics if `den` is zero.
    pub fn from_parts(base: Poly, eps_part: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::normalize(base, eps_part, den)
    }

    fn normalize(base: Poly, eps_part: Poly, den: Poly) -> Self {
        let n = den.nvars();
        if base.is_zero() && eps_part.is_zero() {
            return Self::zero(n);
        }
        if let Some(c) = den.as_constant() {
            if c.is_one() {
                return ParamScalar { base, eps_part, den };
            }
            let r = c.recip();
            return ParamScalar { base: base.scale(&r), eps_part: eps_part.scale(&r), den: Poly::one(n) };
        }
        let g = base.gcd(&eps_part).gcd(&den);
        let (base, eps_part, den) = if g.is_one() {
            (base, eps_part, den)
        } else {
            (
                base.div_exact(&g).expect("gcd divides"),
                eps_part.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            ParamScalar { base, eps_part, den }
        } else {
            let r = lc.recip();
            ParamScalar { base: base.scale(&r), eps_part: eps_part.scale(&r), den: den.scale(&r) }
        }
    }

    pub fn nparams(&self) -> usize {
        self.den.nvars()
    }

    pub fn base(&self) -> &Poly {
        &self.base
    }

    pub fn eps_part(&self) -> &Poly {
        &self.eps_part
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.eps_part.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.base.is_one() && self.eps_part.is_zero() && self.den.is_one()
    }

    /// The value as a plain rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.eps_part.is_zero() || !self.den.is_one() {
            return None;
        }
        self.base.as_constant()
    }

    /// True when no parameter (ε excluded) occurs.
    pub fn is_param_free(&self) -> bool {
        self.base.is_constant() && self.eps_part.is_constant() && self.den.is_constant()
    }

    pub fn uses_param(&self, index: usize) -> bool {
        self.base.uses_var(index) || self.eps_part.uses_var(index) || self.den.uses_var(index)
    }

    /// `base² − eps_part²`: the value is invertible exactly when this is
    /// nonzero (ε ± 1 are zero divisors).
    pub fn norm(&self) -> Poly {
        self.base.mul(&self.base).sub(&self.eps_part.mul(&self.eps_part))
    }

    pub fn is_unit(&self) -> bool {
        !self.norm().is_zero()
    }

    pub fn inv(&self) -> Option<ParamScalar> {
        if self.eps_part.is_zero() {
            if self.base.is_zero() {
                return None;
            }
            return Some(Self::normalize(self.den.clone(), Poly::zero(self.nparams()), self.base.clone()));
        }
        let norm = self.norm();
        if norm.is_zero() {
            return None;
        }
        Some(Self::normalize(self.den.mul(&self.base), self.den.mul(&self.eps_part).neg(), norm))
    }

    pub fn checked_div(&self, other: &ParamScalar) -> Option<ParamScalar> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, n: u32) -> ParamScalar {
        let mut acc = ParamScalar::one(self.nparams());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces parameter `index` by a rational value.
    pub fn substitute(&self, index: usize, value: &BigRational) -> Result<ParamScalar, EvalError> {
        let den = self.den.substitute(index, value);
        if den.is_zero() {
            return Err(EvalError::DivisionByZero);
        }
        Ok(Self::normalize(self.base.substitute(index, value), self.eps_part.substitute(index, value), den))
    }

    pub fn extend_params(&self, extra: usize) -> ParamScalar {
        ParamScalar {
            base: self.base.extend_vars(extra),
            eps_part: self.eps_part.extend_vars(extra),
            den: self.den.extend_vars(extra),
        }
    }

    pub fn eval(&self, params: &ParamValues) -> Result<f64, EvalError> {
        let d = self.den.eval(&params.values);
        if d == 0.0 {
            return Err(EvalError::DivisionByZero);
        }
        let n = self.base.eval(&params.values) + params.eps * self.eps_part.eval(&params.values);
        Ok(n / d)
    }

    fn add_ref(&self, other: &ParamScalar) -> ParamScalar {
        assert_eq!(self.nparams(), other.nparams(), "parameter context mismatch");
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            return Self::normalize(self.base.add(&other.base), self.eps_part.add(&other.eps_part), self.den.clone());
        }
        Self::normalize(
            self.base.mul(&other.den).add(&other.base.mul(&self.den)),
            self.eps_part.mul(&other.den).add(&other.eps_part.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    fn mul_ref(&self, other: &ParamScalar) -> ParamScalar {
        assert_eq!(self.nparams(), other.nparams(), "parameter context mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nparams());
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let base = self.base.mul(&other.base).add(&self.eps_part.mul(&other.eps_part));
        let eps_part = self.base.mul(&other.eps_part).add(&self.eps_part.mul(&other.base));
        Self::normalize(base, eps_part, self.den.mul(&other.den))
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar { base: self.base.neg(), eps_part: self.eps_part.neg(), den: self.den.clone() }
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&ParamScalar> for &ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: &ParamScalar) -> ParamScalar {
                $body(self, rhs)
            }
        }
        impl $tr<ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: ParamScalar) -> ParamScalar {
                $body(&self, &rhs)
            }
        }
        impl $tr<&ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: &ParamScalar) -> ParamScalar {
                $body(&self, rhs)
            }
        }
    };
}

scalar_binop!(Add, add, |a: &ParamScalar, b: &ParamScalar| a.add_ref(b));
scalar_binop!(Sub, sub, |a: &ParamScalar, b: &ParamScalar| a.add_ref(&-b));
scalar_binop!(Mul, mul, |a: &ParamScalar, b: &ParamScalar| a.mul_ref(b));
