//! Exact arithmetic in the quadratic field Q(√3).
//!
//! Regular triangles and hexagons have vertex coordinates built from 1/2 and
//! √3/2, so this is the smallest exact field in which those tables live.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational, Scalar};

/// The number `rational + surd·√3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt3 {
    pub rational: Rational,
    pub surd: Rational,
}

impl QSqrt3 {
    pub fn new(rational: Rational, surd: Rational) -> Self {
        Self { rational, surd }
    }

    pub fn sqrt3() -> Self {
        Self::new(<Rational as Scalar>::zero(), <Rational as Scalar>::one())
    }

    fn from_rational(value: Rational) -> Self {
        Self::new(value, <Rational as Scalar>::zero())
    }

    /// Conjugate `a − b√3`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.rational.clone(), -self.surd.clone())
    }

    /// Field norm `a² − 3b²`, zero only for zero.
    pub fn norm(&self) -> Rational {
        &self.rational * &self.rational - Rational::from_ratio(3, 1) * &self.surd * &self.surd
    }
}

impl Add for QSqrt3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.rational + rhs.rational, self.surd + rhs.surd)
    }
}

impl Sub for QSqrt3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.rational - rhs.rational, self.surd - rhs.surd)
    }
}

impl Mul for QSqrt3 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let three = Rational::from_ratio(3, 1);
        Self::new(
            &self.rational * &rhs.rational + three * &self.surd * &rhs.surd,
            &self.rational * &rhs.surd + &self.surd * &rhs.rational,
        )
    }
}

impl Div for QSqrt3 {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let norm = rhs.norm();
        assert!(!Scalar::is_zero(&norm), "division by zero in Q(sqrt3)");
        let scaled = self * rhs.conjugate();
        Self::new(scaled.rational / &norm, scaled.surd / norm)
    }
}

impl Neg for QSqrt3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.rational, -self.surd)
    }
}

impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (Scalar::is_zero(&self.rational), Scalar::is_zero(&self.surd)) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}*sqrt3", self.surd),
            (false, false) if self.surd.is_negative() => {
                write!(f, "{}-{}*sqrt3", self.rational, -self.surd.clone())
            }
            (false, false) => write!(f, "{}+{}*sqrt3", self.rational, self.surd),
        }
    }
}

impl Scalar for QSqrt3 {
    const EXACT: bool = true;
    const MODE: &'static str = "exact";

    fn zero() -> Self {
        Self::from_rational(<Rational as Scalar>::zero())
    }

    fn one() -> Self {
        Self::from_rational(<Rational as Scalar>::one())
    }

    fn from_i64(value: i64) -> Self {
        Self::from_rational(Rational::from_i64(value))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_rational(Rational::from_ratio(numer, denom))
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(&self.rational) && Scalar::is_zero(&self.surd)
    }

    fn sign(&self) -> i8 {
        let a = self.rational.sign();
        let b = self.surd.sign();
        if a == b || b == 0 {
            return a;
        }
        if a == 0 {
            return b;
        }
        // opposite signs: compare a² with 3b²
        let a2 = &self.rational * &self.rational;
        let b2 = Rational::from_ratio(3, 1) * &self.surd * &self.surd;
        if a2 > b2 {
            a
        } else {
            b
        }
    }

    fn to_f64(&self) -> f64 {
        self.rational.to_f64() + self.surd.to_f64() * 3f64.sqrt()
    }

    fn cos_sin_turn(numer: i64, denom: i64) -> Option<(Self, Self)> {
        // exact for multiples of 30 degrees
        let twelfths = Rational::from_ratio(12 * numer, denom);
        if !twelfths.is_integer() {
            return None;
        }
        let step = num_integer::Integer::mod_floor(&twelfths.to_integer(), &12.into());
        let step: i64 = num_traits::ToPrimitive::to_i64(&step)?;
        let half = || Self::from_ratio(1, 2);
        let root = || Self::new(<Rational as Scalar>::zero(), Rational::from_ratio(1, 2));
        let cos = |k: i64| -> Self {
            match k {
                0 => Self::one(),
                1 | 11 => root(),
                2 | 10 => half(),
                3 | 9 => Self::zero(),
                4 | 8 => -half(),
                5 | 7 => -root(),
                _ => -Self::one(),
            }
        };
        Some((cos(step), cos((step + 9) % 12)))
    }

    fn normalize(triple: [Self; 3]) -> [Self; 3] {
        let Some(lead) = triple.iter().find(|v| !v.is_zero()).cloned() else {
            return triple;
        };
        let scaled = triple.map(|v| v / lead.clone());
        // clear rational denominators so printed triples stay short
        let mut lcm = num_bigint::BigInt::from(1);
        for v in &scaled {
            for part in [&v.rational, &v.surd] {
                lcm = num_integer::Integer::lcm(&lcm, part.denom());
            }
        }
        let factor = Self::from_rational(Rational::from_integer(lcm));
        scaled.map(|v| v * factor.clone())
    }

    fn parse(text: &str) -> Result<Self> {
        parse_qsqrt3(text).ok_or_else(|| Error::ParseScalar {
            text: text.to_string(),
            reason: "expected a rational, optionally plus a multiple of sqrt3",
        })
    }
}

/// Accepts sums of terms like `1/2`, `-3*sqrt3`, `sqrt3`, `0.5√3`.
fn parse_qsqrt3(text: &str) -> Option<QSqrt3> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return None;
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..bytes.len() {
        let c = bytes[i];
        let prev = bytes[i - 1];
        if (c == b'+' || c == b'-') && prev != b'e' && prev != b'E' && prev != b'/' {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);

    let mut total = QSqrt3::zero();
    for term in terms {
        total = total + parse_term(term)?;
    }
    Some(total)
}

fn parse_term(term: &str) -> Option<QSqrt3> {
    for marker in ["*sqrt3", "sqrt3", "*√3", "√3", "*sqrt(3)", "sqrt(3)"] {
        if let Some(coeff) = term.strip_suffix(marker) {
            let coeff = match coeff {
                "" | "+" => <Rational as Scalar>::one(),
                "-" => -<Rational as Scalar>::one(),
                other => parse_rational(other)?,
            };
            return Some(QSqrt3::new(<Rational as Scalar>::zero(), coeff));
        }
    }
    parse_rational(term).map(QSqrt3::from_rational)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn field_arithmetic() {
        let r3 = QSqrt3::sqrt3();
        assert_eq!(r3.clone() * r3.clone(), QSqrt3::from_i64(3));
        let x = QSqrt3::new(q(1, 2), q(3, 4));
        let y = QSqrt3::new(q(-2, 1), q(1, 3));
        assert_eq!((x.clone() * y.clone()) / y, x);
    }

    #[test]
    fn sign_of_mixed_terms() {
        // 2 - sqrt3 > 0, 1 - sqrt3 < 0
        assert_eq!(QSqrt3::new(q(2, 1), q(-1, 1)).sign(), 1);
        assert_eq!(QSqrt3::new(q(1, 1), q(-1, 1)).sign(), -1);
        assert_eq!(QSqrt3::new(q(-2, 1), q(1, 1)).sign(), -1);
        assert_eq!(QSqrt3::zero().sign(), 0);
    }

    #[test]
    fn thirty_degree_table() {
        let (c, s) = QSqrt3::cos_sin_turn(1, 12).unwrap();
        assert_eq!(c, QSqrt3::new(q(0, 1), q(1, 2)));
        assert_eq!(s, QSqrt3::from_ratio(1, 2));
        let (c, s) = QSqrt3::cos_sin_turn(-1, 4).unwrap();
        assert_eq!(c, QSqrt3::zero());
        assert_eq!(s, -QSqrt3::one());
        assert!(QSqrt3::cos_sin_turn(1, 8).is_none());
        for k in 0..12 {
            let (c, s) = QSqrt3::cos_sin_turn(k, 12).unwrap();
            let angle = std::f64::consts::TAU * k as f64 / 12.0;
            assert!((c.to_f64() - angle.cos()).abs() < 1e-12);
            assert!((s.to_f64() - angle.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn display_parse_round_trip() {
        for value in [
            QSqrt3::new(q(1, 2), q(-3, 4)),
            QSqrt3::new(q(0, 1), q(5, 1)),
            QSqrt3::new(q(-7, 3), q(0, 1)),
            QSqrt3::new(q(-1, 2), q(1, 2)),
        ] {
            let text = value.to_string();
            assert_eq!(QSqrt3::parse(&text).unwrap(), value, "{text}");
        }
        assert_eq!(QSqrt3::parse("sqrt3").unwrap(), QSqrt3::sqrt3());
        assert_eq!(QSqrt3::parse("-√3").unwrap(), -QSqrt3::sqrt3());
        assert!(QSqrt3::parse("2*pi").is_err());
    }
}
