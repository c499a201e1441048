//! Number types the continued-fraction maps run on: exact rationals and
//! `f64`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub trait CfScalar: Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn from_int(n: &BigInt) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `⌊self / other⌋` for `other > 0`.
    fn floor_div(&self, other: &Self) -> BigInt;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
    /// Whether arithmetic is exact, so identities can be checked with `==`.
    const EXACT: bool;
}

impl CfScalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn from_int(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn floor_div(&self, other: &Self) -> BigInt {
        (self / other).floor().to_integer()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if Signed::is_negative(self) {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }
}

impl CfScalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn from_int(n: &BigInt) -> Self {
        ToPrimitive::to_f64(n).unwrap_or(f64::INFINITY)
    }
    fn from_rational(q: &BigRational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn floor_div(&self, other: &Self) -> BigInt {
        BigInt::from((self / other).floor() as i128)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Parses `"p/q"`, `"p"` or a decimal such as `"0.25"` exactly.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(n, d);
        return Some(if neg { -q } else { q });
    }
    let p: BigInt = t.parse().ok()?;
    Some(BigRational::from_integer(p))
}
