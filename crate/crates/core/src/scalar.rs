//! Exact elements of the Laurent-series field, kept as reduced fractions of
//! Laurent polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::{add_exp, poly, LaurentPoly};

/// An integer or `+∞`; the valuation of zero is `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(add_exp(a, b)),
            _ => Valuation::Infinite,
        }
    }
}

/// `t^val · num / den` where `num` and `den` are ordinary polynomials with
/// nonzero constant terms, coprime, and `den[0] = 1`. Zero has empty `num`
/// and `val = 0`. The representation is unique, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ValuedScalar<F> {
    val: i64,
    num: Vec<F>,
    den: Vec<F>,
}

impl<F: Field> ValuedScalar<F> {
    pub fn zero() -> Self {
        ValuedScalar { val: 0, num: Vec::new(), den: vec![F::one()] }
    }

    pub fn one() -> Self {
        Self::monomial(F::one(), 0)
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: F, e: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            ValuedScalar { val: e, num: vec![c], den: vec![F::one()] }
        }
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(F::one(), e)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(F::from_i64(v))
    }

    pub fn from_laurent(p: &LaurentPoly<F>) -> Self {
        match p.valuation() {
            None => Self::zero(),
            Some(v) => ValuedScalar { val: v, num: p.raw().1.to_vec(), den: vec![F::one()] },
        }
    }

    /// `numerator / denominator`; fails when the denominator is zero.
    pub fn from_fraction(numerator: &LaurentPoly<F>, denominator: &LaurentPoly<F>) -> Result<Self> {
        let d = Self::from_laurent(denominator);
        Ok(&Self::from_laurent(numerator) * &d.inv()?)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.val == 0 && self.num.len() == 1 && self.num[0].is_one() && self.den.len() == 1
    }

    /// True when the denominator is 1.
    pub fn is_laurent_poly(&self) -> bool {
        self.den.len() == 1
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.val)
        }
    }

    /// Shorthand for the finite valuation of a nonzero element.
    pub(crate) fn val(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Coefficients of `t^0, …, t^{prec−1}` in the expansion of
    /// `t^{−shift}·self`, which must lie in `O`.
    pub(crate) fn shifted_series(&self, shift: i64, prec: usize) -> Vec<F> {
        if self.is_zero() {
            return vec![F::zero(); prec];
        }
        let start = usize::try_from(self.val - shift).expect("element lies outside O after the shift");
        let mut out = vec![F::zero(); start.min(prec)];
        out.extend(self.series(prec.saturating_sub(start)));
        out
    }

    /// Coefficient of `t^{valuation}` in the series expansion.
    pub fn leading_coefficient(&self) -> Result<F> {
        match self.num.first() {
            Some(c) => Ok(c.clone()),
            None => Err(Error::Domain("leading coefficient of zero".into())),
        }
    }

    pub fn numerator(&self) -> LaurentPoly<F> {
        LaurentPoly::from_raw(self.val, self.num.clone())
    }

    pub fn denominator(&self) -> LaurentPoly<F> {
        LaurentPoly::from_raw(0, self.den.clone())
    }

    /// The Laurent polynomial this element equals, when it is one.
    pub fn to_laurent(&self) -> Option<LaurentPoly<F>> {
        if self.is_zero() {
            Some(LaurentPoly::zero())
        } else if self.is_laurent_poly() {
            Some(self.numerator())
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inversion of zero".into()));
        }
        Ok(Self::normalized(-self.val, self.den.clone(), self.num.clone(), false))
    }

    /// Exact quotient; fails on a zero divisor.
    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        ValuedScalar { val: add_exp(self.val, e), num: self.num.clone(), den: self.den.clone() }
    }

    /// Multiplication by a base-field constant.
    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        ValuedScalar { val: self.val, num: poly::scale(&self.num, c), den: self.den.clone() }
    }

    /// The first `count` coefficients of the power series `num / den`.
    fn series(&self, count: usize) -> Vec<F> {
        let mut out: Vec<F> = Vec::with_capacity(count);
        for k in 0..count {
            // den[0] = 1, so out[k] = num[k] - Σ_{m≥1} den[m] out[k-m].
            let mut c = self.num.get(k).cloned().unwrap_or_else(F::zero);
            for m in 1..self.den.len().min(k + 1) {
                c = c - self.den[m].clone() * out[k - m].clone();
            }
            out.push(c);
        }
        out
    }

    /// The part of the series expansion with exponents strictly below `e`.
    pub fn truncate_below(&self, e: i64) -> LaurentPoly<F> {
        if self.is_zero() || e <= self.val {
            return LaurentPoly::zero();
        }
        let count = usize::try_from(e - self.val).expect("truncation window too large");
        if self.is_laurent_poly() {
            return self.numerator().truncate_below(e);
        }
        LaurentPoly::from_raw(self.val, self.series(count))
    }

    /// Coefficient of `t^e` in the series expansion.
    pub fn coefficient(&self, e: i64) -> F {
        if self.is_zero() || e < self.val {
            return F::zero();
        }
        if self.is_laurent_poly() {
            return self.numerator().coefficient(e);
        }
        let count = usize::try_from(e - self.val).expect("coefficient index too large") + 1;
        self.series(count).pop().unwrap()
    }

    /// Restores the representation invariant for `t^val · num / den`.
    fn normalized(mut val: i64, mut num: Vec<F>, mut den: Vec<F>, coprime: bool) -> Self {
        poly::trim(&mut num);
        poly::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        let Some(k) = num.iter().position(|c| !c.is_zero()) else {
            return Self::zero();
        };
        if k > 0 {
            num.drain(..k);
            val = add_exp(val, k as i64);
        }
        let kd = den.iter().position(|c| !c.is_zero()).unwrap();
        if kd > 0 {
            den.drain(..kd);
            val = add_exp(val, -(kd as i64));
        }
        if !coprime && den.len() > 1 && num.len() > 1 {
            let g = poly::gcd(&num, &den);
            if g.len() > 1 {
                num = poly::divrem(&num, &g).0;
                den = poly::divrem(&den, &g).0;
            }
        }
        if !den[0].is_one() {
            let d0 = den[0].inv().unwrap();
            num = poly::scale(&num, &d0);
            den = poly::scale(&den, &d0);
        }
        ValuedScalar { val, num, den }
    }
}

impl<F: Field> Add for &ValuedScalar<F> {
    type Output = ValuedScalar<F>;
    fn add(self, rhs: Self) -> ValuedScalar<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.val.min(rhs.val);
        let same_den = self.den == rhs.den;
        let lift = |x: &ValuedScalar<F>, other_den: &[F]| {
            let mut v = vec![F::zero(); (x.val - low) as usize];
            if same_den || other_den.len() == 1 {
                v.extend(x.num.iter().cloned());
            } else {
                v.extend(poly::mul(&x.num, other_den));
            }
            v
        };
        let num = poly::add(&lift(self, &rhs.den), &lift(rhs, &self.den));
        if self.den.len() == 1 && rhs.den.len() == 1 {
            return ValuedScalar::normalized(low, num, vec![F::one()], true);
        }
        // a/d + b/d keeps d, but a common factor may still cancel against a + b.
        let den = if same_den { self.den.clone() } else { poly::mul(&self.den, &rhs.den) };
        ValuedScalar::normalized(low, num, den, false)
    }
}

impl<F: Field> Sub for &ValuedScalar<F> {
    type Output = ValuedScalar<F>;
    fn sub(self, rhs: Self) -> ValuedScalar<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &ValuedScalar<F> {
    type Output = ValuedScalar<F>;
    fn neg(self) -> ValuedScalar<F> {
        ValuedScalar { val: self.val, num: poly::neg(&self.num), den: self.den.clone() }
    }
}

impl<F: Field> Mul for &ValuedScalar<F> {
    type Output = ValuedScalar<F>;
    fn mul(self, rhs: Self) -> ValuedScalar<F> {
        if self.is_zero() || rhs.is_zero() {
            return ValuedScalar::zero();
        }
        let val = add_exp(self.val, rhs.val);
        let num = poly::mul(&self.num, &rhs.num);
        match (self.den.len(), rhs.den.len()) {
            (1, 1) => ValuedScalar { val, num, den: vec![F::one()] },
            _ => ValuedScalar::normalized(val, num, poly::mul(&self.den, &rhs.den), false),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Field> $tr for ValuedScalar<F> {
            type Output = ValuedScalar<F>;
            fn $m(self, rhs: ValuedScalar<F>) -> ValuedScalar<F> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<F: Field> Neg for ValuedScalar<F> {
    type Output = ValuedScalar<F>;
    fn neg(self) -> ValuedScalar<F> {
        -&self
    }
}

impl<F: Field> fmt::Debug for ValuedScalar<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent_poly() {
            write!(f, "{:?}", self.numerator())
        } else {
            write!(f, "({:?})/({:?})", self.numerator(), self.denominator())
        }
    }
}
