//! Exact rational coefficients.
//!
//! Every "= 0" / "≠ 0" decision downstream (divisibility, classification
//! criteria) is made on these values, so they are exact rationals rather than
//! floats. Values are kept in lowest terms with a positive denominator; zero
//! is 0/1.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff(BigRational);

impl Coeff {
    pub fn zero() -> Self {
        Coeff(BigRational::zero())
    }

    pub fn one() -> Self {
        Coeff(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coeff(BigRational::from_integer(BigInt::from(n)))
    }

    /// Build `numer/denom`. Panics if `denom == 0`; callers that accept user
    /// input must reject a zero denominator before reaching here.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Coeff(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Coeff(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Coeff(self.0.recip()))
        }
    }

    /// Multiply by a plain integer (derivative/antiderivative bookkeeping).
    pub fn mul_int(&self, n: i64) -> Self {
        Coeff(&self.0 * BigInt::from(n))
    }

    /// Divide by a plain nonzero integer.
    pub fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero integer");
        Coeff(&self.0 / BigInt::from(n))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        Coeff(&self.0 + &rhs.0)
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        Coeff(&self.0 - &rhs.0)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        Coeff(&self.0 * &rhs.0)
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff(-&self.0)
    }
}

/// Prints "a" for integers and "a/b" otherwise; this exact shape is part of
/// the CLI report contract (classification payloads never contain floats).
impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Debug reads like Display so test failures stay legible.
impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Coeff::ratio(2, 4), Coeff::ratio(1, 2));
        assert_eq!(Coeff::ratio(1, -2), Coeff::ratio(-1, 2));
        assert_eq!(Coeff::ratio(0, 7), Coeff::zero());
    }

    #[test]
    fn display_shapes() {
        assert_eq!(Coeff::from_int(3).to_string(), "3");
        assert_eq!(Coeff::ratio(-1, 3).to_string(), "-1/3");
        assert_eq!(Coeff::ratio(4, 2).to_string(), "2");
        assert_eq!(Coeff::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let a = Coeff::ratio(1, 4);
        let b = Coeff::ratio(1, 2);
        assert_eq!(&a + &b, Coeff::ratio(3, 4));
        assert_eq!(&a - &b, Coeff::ratio(-1, 4));
        assert_eq!(&a * &b, Coeff::ratio(1, 8));
        assert_eq!(-&b, Coeff::ratio(-1, 2));
        assert_eq!(a.recip().unwrap(), Coeff::from_int(4));
        assert!(Coeff::zero().recip().is_none());
    }
}
