//! Numeric abstraction for edge lengths.
//!
//! Tree metrics, interval sums and the feasibility solver are generic over
//! [`Scalar`]. Verdicts are only trustworthy for exact implementations
//! ([`Rational`]); `f64` is supported for quick exploratory evaluation.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational, the default exact scalar.
pub type Rational = BigRational;

pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// `true` when arithmetic is exact.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    /// Exact value, when the scalar can be represented as a rational.
    fn to_rational(&self) -> Option<Rational>;

    fn pow10(exp: u32) -> Self {
        num_traits::pow(Self::from_int(10), exp as usize)
    }

    fn is_positive_strict(&self) -> bool {
        *self > Self::zero()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn pow10(exp: u32) -> Self {
        BigRational::from_integer(num_traits::pow(BigInt::from(10), exp as usize))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        BigRational::from_f64(*self)
    }

    fn pow10(exp: u32) -> Self {
        10f64.powi(exp as i32)
    }
}

/// Parse an exact length: an integer (`42`), a ratio (`3/4`) or a finite
/// decimal (`1.25`). Exponents and floats are rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{}{}", if int_part.is_empty() { "0" } else { int_part }, frac_part);
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(numer, denom);
    Some(if neg { -r } else { r })
}

/// Render an exact value as an integer when possible, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render any scalar using the exact format when it has a rational value.
pub fn format_scalar<T: Scalar>(v: &T) -> String {
    match v.to_rational() {
        Some(r) if T::EXACT => format_rational(&r),
        _ => v.to_string(),
    }
}

pub(crate) fn from_usize<T: Scalar>(v: usize) -> T {
    T::from_int(i64::from_usize(v).expect("count fits in i64"))
}
