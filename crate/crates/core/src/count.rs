//! Exact counts and base-2 log-domain values.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// An exact, arbitrary-precision nonnegative count.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn new(value: BigUint) -> Self {
        BigCount(value)
    }

    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// `log₂` of the count; zero has no logarithm.
    pub fn log2(&self) -> Result<LogValue> {
        if self.is_zero() {
            return Err(invalid("log of a zero count"));
        }
        Ok(LogValue(log2_biguint(&self.0)))
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.0.clone().into())
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl Add for BigCount {
    type Output = BigCount;

    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl Mul for BigCount {
    type Output = BigCount;

    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        BigCount(iter.map(|c| c.0).sum())
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A base-2 logarithm of a positive quantity.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct LogValue(f64);

impl LogValue {
    pub fn new(log2: f64) -> Self {
        debug_assert!(log2.is_finite());
        LogValue(log2)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub(crate) fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit mantissa");
    top.log2() + shift as f64
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `log₂ n!`, from the exact factorial.
pub fn log2_factorial(n: u64) -> f64 {
    log2_biguint(&factorial(n))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Nearest `f64` to an exact rational, robust to huge numerators.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let sign = if r.numer().sign() == num_bigint::Sign::Minus { -1.0 } else { 1.0 };
    sign * (log2_biguint(num) - log2_biguint(den)).exp2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_logs() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert!((log2_factorial(4) - 24f64.log2()).abs() < 1e-12);
        // 400! has far more than 1000 bits
        let direct: f64 = (1..=400u32).map(|i| (i as f64).log2()).sum();
        assert!((log2_factorial(400) - direct).abs() < 1e-9);
    }

    #[test]
    fn log_of_zero_is_an_error() {
        assert!(BigCount::zero().log2().is_err());
        assert_eq!(BigCount::one().log2().unwrap().value(), 0.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(40, 20), BigUint::from(137846528820u64));
    }

    #[test]
    fn rational_conversion() {
        let r = BigRational::new(9.into(), 2.into());
        assert_eq!(rational_to_f64(&r), 4.5);
    }
}
