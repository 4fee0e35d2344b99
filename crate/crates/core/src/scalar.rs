//! Exact field scalars.
//!
//! Everything in this crate is generic over [`Scalar`], a field whose
//! arithmetic is exact. The provided implementation covers
//! [`num_rational::Ratio`] over any signed integer type, so both
//! arbitrary-precision [`num_rational::BigRational`] and the fixed-width
//! `Rational64` work. Text form is `"n"` or `"p/q"`.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

use crate::error::Error;

/// An exact field element.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_int(value: i64) -> Self;

    /// Parses `-?digits(/digits)?`. Zero denominators are rejected.
    fn parse_text(text: &str) -> Result<Self, Error>;

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Integer power; negative exponents invert.
    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 { self.recip() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + Display + Debug + FromStr + Send + Sync + 'static,
{
    fn from_int(value: i64) -> Self {
        Ratio::from_integer(T::from_i64(value).expect("integer out of range for scalar type"))
    }

    fn parse_text(text: &str) -> Result<Self, Error> {
        let bad = |reason: &str| Error::Scalar {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        let (num, den) = match trimmed.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (trimmed, None),
        };
        let digits = num.strip_prefix('-').unwrap_or(num);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("expected -?digits(/digits)?"));
        }
        let numer = T::from_str(num).map_err(|_| bad("numerator out of range"))?;
        let denom = match den {
            None => T::one(),
            Some(d) => {
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad("expected -?digits(/digits)?"));
                }
                T::from_str(d).map_err(|_| bad("denominator out of range"))?
            }
        };
        if denom.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Ratio::new(numer, denom))
    }
}

/// Shorthand for `S::from_int`.
pub fn int<S: Scalar>(value: i64) -> S {
    S::from_int(value)
}
