//! Exact coefficient fields.
//!
//! The series engine is generic over [`Scalar`]; the two fields used in
//! practice are [`Rational`] and [`ExactScalar`](crate::cyclotomic::ExactScalar),
//! the latter adding elements of a cyclotomic field.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ScalarError;

pub type Rational = BigRational;

/// An exact field usable as a series coefficient.
///
/// Operator impls may panic on inputs the field cannot combine (for example
/// two cyclotomic values of different order); the `checked_*` helpers on the
/// concrete types report those cases as errors instead.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn try_inv(&self) -> Result<Self, ScalarError>;

    /// The real value, if the element is real and rational.
    fn to_f64(&self) -> Option<f64>;

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.clone() + other.clone();
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self = self.clone() - other.clone();
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn pow_u32(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// JSON form of a coefficient.
    fn to_json(&self) -> serde_json::Value;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn to_f64(&self) -> Option<f64> {
        rational_to_f64(self)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!([self.numer().to_string(), self.denom().to_string()])
    }
}

/// Converts a rational to the nearest `f64`, staying accurate when the
/// numerator and denominator individually overflow.
pub fn rational_to_f64(r: &Rational) -> Option<f64> {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return Some(n / d);
        }
    }
    let shift = r.numer().bits().max(r.denom().bits()) as i64 - 900;
    let (n, d) = if shift > 0 {
        (
            r.numer().clone() >> shift as usize,
            r.denom().clone() >> shift as usize,
        )
    } else {
        (r.numer().clone(), r.denom().clone())
    };
    if d.is_zero() {
        return Some(if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
    }
    Some(n.to_f64()? / d.to_f64()?)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Decimal points are rejected: exact paths
/// never go through floating point.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let err = || ScalarError::Parse(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| err())?;
    let d: BigInt = den.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// `p/q` text form, `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_two_thirds() {
        assert_eq!(rat(2, 3).try_inv().unwrap(), rat(3, 2));
        assert_eq!(int(0).try_inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn lowest_terms_with_positive_denominator() {
        let r = rat(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/9").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("0.5").is_err());
        assert_eq!(parse_rational("1/0"), Err(ScalarError::DivisionByZero));
        assert_eq!(format_rational(&rat(5, 10)), "1/2");
        assert_eq!(format_rational(&int(-4)), "-4");
    }

    #[test]
    fn huge_rationals_convert() {
        let big = BigInt::from(10).pow(400);
        let r = Rational::new(big.clone() * 3, big);
        assert!((rational_to_f64(&r).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn pow_by_squaring() {
        assert_eq!(rat(-1, 2).pow_u32(5), rat(-1, 32));
        assert_eq!(rat(3, 1).pow_u32(0), int(1));
    }
}
