//! Exact nonnegative rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A nonnegative rational number kept in lowest terms.
///
/// Text form is `p/q`; a bare integer `p` is accepted on input.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<BigUint>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("malformed rational `{0}`: expected `p/q`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Rational {
    pub fn new(numer: impl Into<BigUint>, denom: impl Into<BigUint>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        Rational(Ratio::new(numer.into(), denom))
    }

    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    pub fn one() -> Self {
        Rational(Ratio::one())
    }

    pub fn half() -> Self {
        Rational::new(1u32, 2u32)
    }

    /// `2^-exp`.
    pub fn dyadic_unit(exp: u32) -> Self {
        Rational(Ratio::new_raw(
            BigUint::one(),
            BigUint::one() << exp as usize,
        ))
    }

    pub(crate) fn from_ratio(r: Ratio<BigUint>) -> Self {
        Rational(r)
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_unit_interval(&self) -> bool {
        self.0 <= Ratio::one()
    }

    /// True when the denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        let d = self.denom();
        d.count_ones() == 1
    }

    pub fn double(&self) -> Self {
        Rational(&self.0 * BigUint::from(2u32))
    }

    pub fn halve(&self) -> Self {
        Rational(&self.0 / BigUint::from(2u32))
    }

    /// `|self - other|`.
    pub fn abs_diff(&self, other: &Rational) -> Rational {
        match self.0.cmp(&other.0) {
            Ordering::Less => Rational(&other.0 - &self.0),
            _ => Rational(&self.0 - &other.0),
        }
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Rational) -> Option<Rational> {
        (self.0 >= other.0).then(|| Rational(&self.0 - &other.0))
    }

    /// `1 - self`; panics when `self > 1`.
    pub fn complement(&self) -> Rational {
        Rational::one()
            .checked_sub(self)
            .expect("complement of a value above 1")
    }

    /// Integer part of `self * 2^bits`.
    pub fn floor_scaled(&self, bits: u32) -> BigUint {
        (self.numer() << bits as usize) / self.denom()
    }

    pub fn to_f64(&self) -> f64 {
        if let (Some(n), Some(d)) = (self.numer().to_u64(), self.denom().to_u64()) {
            return n as f64 / d as f64;
        }
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Numerator and denominator as machine words when both fit.
    pub fn to_u64_parts(&self) -> Option<(u64, u64)> {
        Some((self.numer().to_u64()?, self.denom().to_u64()?))
    }

    pub fn from_u64_parts(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "zero denominator");
        let g = numer.gcd(&denom);
        Rational(Ratio::new_raw(
            BigUint::from(numer / g),
            BigUint::from(denom / g),
        ))
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational(Ratio::from_integer(BigUint::from(n)))
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ParseRationalError::Malformed(s.to_string());
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !digits(n) || !digits(d) {
            return Err(malformed());
        }
        let n: BigUint = n.parse().map_err(|_| malformed())?;
        let d: BigUint = d.parse().map_err(|_| malformed())?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational::new(n, d))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        let r: Rational = "6/8".parse().unwrap();
        assert_eq!(r.to_string(), "3/4");
        assert_eq!("1".parse::<Rational>().unwrap(), Rational::one());
        assert_eq!("0/5".parse::<Rational>().unwrap().to_string(), "0/1");
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            "1/0".parse::<Rational>(),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        for bad in ["", "-1/2", "a/b", "1/2/3", "1.5"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn dyadic_detection() {
        assert!(Rational::new(3u32, 8u32).is_dyadic());
        assert!(Rational::one().is_dyadic());
        assert!(!Rational::new(1u32, 3u32).is_dyadic());
    }

    #[test]
    fn arithmetic_helpers() {
        let a = Rational::new(1u32, 3u32);
        let b = Rational::new(3u32, 4u32);
        assert_eq!(a.abs_diff(&b), Rational::new(5u32, 12u32));
        assert_eq!(b.abs_diff(&a), Rational::new(5u32, 12u32));
        assert_eq!(a.checked_sub(&b), None);
        assert_eq!(b.complement(), Rational::new(1u32, 4u32));
        assert_eq!(
            Rational::new(5u32, 16u32).floor_scaled(3),
            BigUint::from(2u32)
        );
    }
}
