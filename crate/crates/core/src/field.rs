//! Base fields for the Laurent-series coefficients.
//!
//! Two modes are supported: exact rationals ([`Rational`]) and prime fields
//! [`Fp<P>`]. Everything above this module is generic over [`Field`].

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational numbers.
pub type Rational = BigRational;

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + Debug
    + Eq
    + Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Image of an integer.
    fn from_i64(v: i64) -> Self;

    /// `Some(self > 0)` on ordered fields, `None` otherwise.
    fn is_positive(&self) -> Option<bool>;

    /// Every element, when the field is finite.
    fn elements() -> Option<Vec<Self>>;

    /// Canonical text form used in JSON documents.
    fn encode(&self) -> String;

    fn decode(s: &str) -> Result<Self>;

    /// `"rational"` or `"prime:p"`.
    fn label() -> String;
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_positive(&self) -> Option<bool> {
        Some(Signed::is_positive(self))
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn encode(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn decode(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad rational coefficient {s:?}")))
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(BigRational::new(parse_int(p)?, q))
            }
            None => Ok(BigRational::from_integer(parse_int(s)?)),
        }
    }

    fn label() -> String {
        "rational".to_string()
    }
}

/// Residues modulo the prime `P`, stored canonically in `[0, P)`.
///
/// `P` must be prime; inversion uses Fermat's little theorem.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in prime field")
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn is_positive(&self) -> Option<bool> {
        None
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }

    fn encode(&self) -> String {
        self.0.to_string()
    }

    fn decode(s: &str) -> Result<Self> {
        let v: u64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
        if v >= P {
            return Err(Error::Parse(format!("residue {v} is not reduced modulo {P}")));
        }
        Ok(Fp(v))
    }

    fn label() -> String {
        format!("prime:{P}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn prime_field_inverses() {
        for v in 1..7 {
            let x = F7::new(v);
            assert_eq!(x * x.inv().unwrap(), F7::one());
        }
        assert!(F7::zero().inv().is_none());
        assert_eq!(F7::from_i64(-1), F7::new(6));
    }

    #[test]
    fn rational_encoding() {
        let x = Rational::new(BigInt::from(-3), BigInt::from(6));
        assert_eq!(x.encode(), "-1/2");
        assert_eq!(Rational::decode("-1/2").unwrap(), x);
        assert_eq!(Rational::from_i64(4).encode(), "4");
        assert!(Rational::decode("1/0").is_err());
        assert!(F7::decode("7").is_err());
        assert_eq!(F7::decode("3").unwrap().encode(), "3");
    }
}
