//! Finitely supported Laurent polynomials `Σ c_k t^k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;

/// Dense polynomial helpers on coefficient vectors (index = exponent).
pub(crate) mod poly {
    use crate::field::Field;

    pub fn trim<F: Field>(p: &mut Vec<F>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.to_vec();
        for (o, s) in out.iter_mut().zip(short) {
            *o = o.clone() + s.clone();
        }
        trim(&mut out);
        out
    }

    pub fn neg<F: Field>(a: &[F]) -> Vec<F> {
        a.iter().map(|c| -c.clone()).collect()
    }

    pub fn mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![F::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        trim(&mut out);
        out
    }

    pub fn scale<F: Field>(a: &[F], c: &F) -> Vec<F> {
        let mut out: Vec<F> = a.iter().map(|x| x.clone() * c.clone()).collect();
        trim(&mut out);
        out
    }

    /// Euclidean division; `b` must be nonzero.
    pub fn divrem<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
        let lead_inv = b.last().expect("division by zero polynomial").inv().unwrap();
        let mut rem = a.to_vec();
        trim(&mut rem);
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![F::zero(); rem.len() - b.len() + 1];
        while rem.len() >= b.len() {
            let shift = rem.len() - b.len();
            let c = rem.last().unwrap().clone() * lead_inv.clone();
            for (k, bk) in b.iter().enumerate() {
                rem[shift + k] = rem[shift + k].clone() - c.clone() * bk.clone();
            }
            quot[shift] = c;
            rem.pop();
            trim(&mut rem);
        }
        trim(&mut quot);
        (quot, rem)
    }

    /// Monic greatest common divisor.
    pub fn gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        if let Some(l) = x.last() {
            let li = l.inv().unwrap();
            x = scale(&x, &li);
        }
        x
    }

    /// Exact quotient `a / b` computed from the low end; both have nonzero
    /// constant terms or `a` is zero. Debug builds check the remainder.
    pub fn div_exact_low<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
        if a.is_empty() {
            return Vec::new();
        }
        debug_assert!(a.len() >= b.len());
        let len = a.len() + 1 - b.len();
        let b0_inv = b[0].inv().expect("divisor has zero constant term");
        let mut rem = a.to_vec();
        let mut q = Vec::with_capacity(len);
        for k in 0..len {
            let c = rem[k].clone() * b0_inv.clone();
            if !c.is_zero() {
                for (m, bm) in b.iter().enumerate() {
                    if k + m < rem.len() {
                        rem[k + m] = rem[k + m].clone() - c.clone() * bm.clone();
                    }
                }
            }
            q.push(c);
        }
        debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        trim(&mut q);
        q
    }
}

/// A Laurent polynomial `t^low · (c_0 + c_1 t + …)` with `c_0 ≠ 0` and no
/// trailing zero coefficients. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<F> {
    low: i64,
    coeffs: Vec<F>,
}

pub(crate) fn add_exp(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("exponent overflow")
}

impl<F: Field> LaurentPoly<F> {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(F::one(), 0)
    }

    /// `c · t^e`.
    pub fn monomial(c: F, e: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { low: e, coeffs: vec![c] }
        }
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(F::one(), e)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, F)>>(terms: I) -> Self {
        let mut terms: Vec<(i64, F)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        terms.sort_by_key(|(e, _)| *e);
        let low = terms[0].0;
        let high = terms.last().unwrap().0;
        let width = usize::try_from(high - low).expect("exponent range too large") + 1;
        let mut coeffs = vec![F::zero(); width];
        for (e, c) in terms {
            let k = (e - low) as usize;
            coeffs[k] = coeffs[k].clone() + c;
        }
        Self::from_raw(low, coeffs)
    }

    /// `t^low · Σ coeffs[k] t^k`, normalizing leading and trailing zeros.
    pub(crate) fn from_raw(low: i64, mut coeffs: Vec<F>) -> Self {
        poly::trim(&mut coeffs);
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => Self::zero(),
            Some(0) => LaurentPoly { low, coeffs },
            Some(k) => LaurentPoly {
                low: add_exp(low, k as i64),
                coeffs: coeffs.split_off(k),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn lowest_coefficient(&self) -> Option<&F> {
        self.coeffs.first()
    }

    pub fn coefficient(&self, e: i64) -> F {
        if self.is_zero() || e < self.low {
            return F::zero();
        }
        self.coeffs
            .get((e - self.low) as usize)
            .cloned()
            .unwrap_or_else(F::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: add_exp(self.low, e), coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_raw(self.low, poly::scale(&self.coeffs, c))
    }

    /// The terms with exponent strictly below `e`.
    pub fn truncate_below(&self, e: i64) -> Self {
        if self.is_zero() || e <= self.low {
            return Self::zero();
        }
        let keep = ((e - self.low) as usize).min(self.coeffs.len());
        Self::from_raw(self.low, self.coeffs[..keep].to_vec())
    }

    /// Exact division, assuming `other` divides `self` in the Laurent ring.
    pub fn div_exact(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let q = poly::div_exact_low(&self.coeffs, &other.coeffs);
        Self::from_raw(self.low - other.low, q)
    }

    pub(crate) fn raw(&self) -> (i64, &[F]) {
        (self.low, &self.coeffs)
    }
}

impl<F: Field> Add for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: Self) -> LaurentPoly<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let pad = |p: &LaurentPoly<F>| {
            let mut v = vec![F::zero(); (p.low - low) as usize];
            v.extend(p.coeffs.iter().cloned());
            v
        };
        LaurentPoly::from_raw(low, poly::add(&pad(self), &pad(rhs)))
    }
}

impl<F: Field> Sub for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: Self) -> LaurentPoly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        LaurentPoly { low: self.low, coeffs: poly::neg(&self.coeffs) }
    }
}

impl<F: Field> Mul for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: Self) -> LaurentPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_raw(add_exp(self.low, rhs.low), poly::mul(&self.coeffs, &rhs.coeffs))
    }
}

impl<F: Field> fmt::Debug for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c:?}t^{e}")?;
        }
        Ok(())
    }
}
