//! Number systems the geometry is generic over.
//!
//! Exact arithmetic uses arbitrary-precision rationals ([`Rational`]) or the
//! quadratic field Q(√3) ([`QSqrt3`](crate::QSqrt3)); `f64` is the floating
//! policy, where every zero test is taken with [`FLOAT_TOLERANCE`] on
//! unit-normalized homogeneous triples.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Absolute tolerance applied to normalized representatives in float mode.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when no rounding ever happens.
    const EXACT: bool;
    /// Short name used in serialized output (`"exact"`, `"float"`).
    const MODE: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Exact zero test, or `|v| < FLOAT_TOLERANCE` for floats.
    fn is_zero(&self) -> bool;
    /// -1, 0 or 1, with the same zero test as [`Scalar::is_zero`].
    fn sign(&self) -> i8;
    fn to_f64(&self) -> f64;

    /// `(cos, sin)` of the angle `2π·numer/denom`, if representable.
    fn cos_sin_turn(numer: i64, denom: i64) -> Option<(Self, Self)>;

    /// Canonical representative of a nonzero homogeneous triple.
    fn normalize(triple: [Self; 3]) -> [Self; 3];

    fn parse(text: &str) -> Result<Self>;

    fn two() -> Self {
        Self::from_i64(2)
    }
}

// ---------------------------------------------------------------------------
// f64

impl Scalar for f64 {
    const EXACT: bool = false;
    const MODE: &'static str = "float";

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn is_zero(&self) -> bool {
        self.abs() < FLOAT_TOLERANCE
    }

    fn sign(&self) -> i8 {
        if Scalar::is_zero(self) {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn cos_sin_turn(numer: i64, denom: i64) -> Option<(Self, Self)> {
        let angle = std::f64::consts::TAU * numer as f64 / denom as f64;
        Some((angle.cos(), angle.sin()))
    }

    fn normalize(triple: [Self; 3]) -> [Self; 3] {
        let norm = triple.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut unit = triple.map(|v| v / norm);
        if let Some(lead) = unit.iter().copied().find(|v| v.abs() > FLOAT_TOLERANCE) {
            if lead < 0.0 {
                unit = unit.map(|v| -v);
            }
        }
        // -0.0 would otherwise leak into serialized output
        unit.map(|v| if v == 0.0 { 0.0 } else { v })
    }

    fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if let Ok(value) = trimmed.parse::<f64>() {
            if value.is_finite() {
                return Ok(value);
            }
            return Err(Error::ParseScalar {
                text: text.to_string(),
                reason: "not a finite number",
            });
        }
        crate::sqrt3::QSqrt3::parse(trimmed).map(|v| v.to_f64())
    }
}

// ---------------------------------------------------------------------------
// BigRational

impl Scalar for Rational {
    const EXACT: bool = true;
    const MODE: &'static str = "exact";

    fn zero() -> Self {
        num_traits::Zero::zero()
    }

    fn one() -> Self {
        num_traits::One::one()
    }

    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn sign(&self) -> i8 {
        if num_traits::Zero::is_zero(self) {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn cos_sin_turn(numer: i64, denom: i64) -> Option<(Self, Self)> {
        // only multiples of a quarter turn are rational
        let quarter = BigRational::new(BigInt::from(4 * numer), BigInt::from(denom));
        if !quarter.is_integer() {
            return None;
        }
        let q = quarter.to_integer().mod_floor(&BigInt::from(4));
        let (c, s) = match q.to_i64()? {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        Some((Self::from_i64(c), Self::from_i64(s)))
    }

    fn normalize(triple: [Self; 3]) -> [Self; 3] {
        let lcm = triple
            .iter()
            .fold(<BigInt as num_traits::One>::one(), |acc, v| acc.lcm(v.denom()));
        let ints = triple
            .iter()
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect::<Vec<_>>();
        let gcd = ints
            .iter()
            .fold(<BigInt as num_traits::Zero>::zero(), |acc, v| acc.gcd(v));
        let negate = ints
            .iter()
            .find(|v| !num_traits::Zero::is_zero(*v))
            .is_some_and(|lead| lead.is_negative());
        let mut out = [
            <Self as Scalar>::zero(),
            <Self as Scalar>::zero(),
            <Self as Scalar>::zero(),
        ];
        for (slot, value) in out.iter_mut().zip(ints) {
            let reduced = value / &gcd;
            *slot = BigRational::from_integer(if negate { -reduced } else { reduced });
        }
        out
    }

    fn parse(text: &str) -> Result<Self> {
        parse_rational(text).ok_or_else(|| Error::ParseScalar {
            text: text.to_string(),
            reason: "expected an integer, p/q or a finite decimal",
        })
    }
}

/// Parses `p`, `p/q` or a finite decimal (optionally with an exponent) into
/// an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((numer, denom)) = text.split_once('/') {
        let numer: BigInt = numer.trim().parse().ok()?;
        let denom: BigInt = denom.trim().parse().ok()?;
        if num_traits::Zero::is_zero(&denom) {
            return None;
        }
        return Some(BigRational::new(numer, denom));
    }
    if let Ok(int) = text.parse::<BigInt>() {
        return Some(BigRational::from_integer(int));
    }
    parse_decimal(text)
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if all_digits.is_empty() {
        <BigInt as num_traits::Zero>::zero()
    } else {
        all_digits.parse().ok()?
    };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("3/6"), Some(q(1, 2)));
        assert_eq!(parse_rational("-7"), Some(q(-7, 1)));
        assert_eq!(parse_rational("0.25"), Some(q(1, 4)));
        assert_eq!(parse_rational("-1.5e-2"), Some(q(-3, 200)));
        assert_eq!(parse_rational(".5"), Some(q(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn rational_normalization_is_primitive_with_positive_lead() {
        let t = Rational::normalize([q(-1, 2), q(1, 3), q(0, 1)]);
        assert_eq!(t, [q(3, 1), q(-2, 1), q(0, 1)]);
        let t = Rational::normalize([q(0, 1), q(-4, 1), q(6, 1)]);
        assert_eq!(t, [q(0, 1), q(2, 1), q(-3, 1)]);
    }

    #[test]
    fn float_normalization_is_unit_with_positive_lead() {
        let t = f64::normalize([0.0, -3.0, 4.0]);
        assert!((t[1] - 0.6).abs() < 1e-15);
        assert!((t[2] + 0.8).abs() < 1e-15);
    }

    #[test]
    fn rational_quarter_turns_only() {
        assert_eq!(Rational::cos_sin_turn(1, 4), Some((q(0, 1), q(1, 1))));
        assert_eq!(Rational::cos_sin_turn(-1, 4), Some((q(0, 1), q(-1, 1))));
        assert!(Rational::cos_sin_turn(1, 6).is_none());
    }

    #[test]
    fn float_parse_accepts_exact_forms() {
        assert_eq!(f64::parse("1/4").unwrap(), 0.25);
        assert!((f64::parse("1/2*sqrt3").unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(f64::parse("inf").is_err());
    }
}
