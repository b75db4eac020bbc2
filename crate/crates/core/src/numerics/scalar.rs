//! Arbitrary-precision rational scalars.
//!
//! `Scalar` wraps a [`BigRational`], which is always kept in lowest terms with
//! a positive denominator. Serialization uses the string form `"p/q"` (or
//! `"p"` when `q = 1`) so that values round-trip exactly through JSON.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseScalarError;

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, ParseScalarError> {
        if den.is_zero() {
            return Err(ParseScalarError::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(num, den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Scalar(self.0.recip())
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Lossy conversion for rendering and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Best rational approximation of `x` with denominator at most `max_den`
    /// (continued-fraction convergents and semiconvergents).
    pub fn approximate(x: f64, max_den: u64) -> Self {
        assert!(x.is_finite(), "cannot approximate a non-finite value");
        let negative = x < 0.0;
        let mut v = x.abs();
        // (p0/q0, p1/q1) successive convergents
        let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
        loop {
            let a = v.floor();
            if a > u32::MAX as f64 {
                break;
            }
            let a = a as u64;
            let q2 = a.saturating_mul(q1).saturating_add(q0);
            if q2 > max_den {
                // best semiconvergent within the bound
                let k = (max_den - q0) / q1.max(1);
                let (ps, qs) = (k * p1 + p0, k * q1 + q0);
                let err_s = (x.abs() - ps as f64 / qs as f64).abs();
                let err_c = if q1 == 0 {
                    f64::INFINITY
                } else {
                    (x.abs() - p1 as f64 / q1 as f64).abs()
                };
                if qs > 0 && err_s < err_c {
                    p1 = ps;
                    q1 = qs;
                }
                break;
            }
            let p2 = a * p1 + p0;
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            let frac = v - a as f64;
            if frac < 1e-12 {
                break;
            }
            v = 1.0 / frac;
        }
        let s = Scalar::ratio(p1 as i64, q1.max(1) as i64);
        if negative {
            -s
        } else {
            s
        }
    }

    /// Parse `"p/q"`, `"p"`, or a finite decimal literal such as `"-0.125"`.
    pub fn parse(text: &str) -> Result<Self, ParseScalarError> {
        let s = text.trim();
        if s.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            return Scalar::from_bigints(num, den);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let negative = int_part.trim_start().starts_with('-');
            let int_digits = int_part.trim_start_matches(['-', '+']);
            if !frac_part.chars().all(|c| c.is_ascii_digit())
                || !int_digits.chars().all(|c| c.is_ascii_digit())
                || (int_digits.is_empty() && frac_part.is_empty())
            {
                return Err(ParseScalarError::Malformed(text.to_string()));
            }
            let digits = format!("{int_digits}{frac_part}");
            let mut num = parse_int(if digits.is_empty() { "0" } else { &digits })?;
            if negative {
                num = -num;
            }
            let den = num_traits::pow(BigInt::from(10), frac_part.len());
            return Scalar::from_bigints(num, den);
        }
        Ok(Scalar(BigRational::from_integer(parse_int(s)?)))
    }
}

fn parse_int(s: &str) -> Result<BigInt, ParseScalarError> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(ParseScalarError::Malformed(s.to_string()));
    }
    BigInt::from_str(t.strip_prefix('+').unwrap_or(t))
        .map_err(|_| ParseScalarError::Malformed(s.to_string()))
}

/// Lowest common multiple of the denominators, used to clear fractions.
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, s| acc.lcm(s.denom()))
}

/// Greatest common divisor of the numerators (zero if all values are zero).
pub fn gcd_of_numerators<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, s| acc.gcd(s.numer()))
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse(s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ScalarVisitor;

        impl Visitor<'_> for ScalarVisitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\", \"p\", or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
                Scalar::parse(v).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
                Ok(Scalar::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
                Ok(Scalar::from(BigInt::from(v)))
            }
        }

        deserializer.deserialize_any(ScalarVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_and_display() {
        let s = Scalar::ratio(6, -4);
        assert_eq!(s.to_string(), "-3/2");
        assert!(s.denom() > &BigInt::zero());
        assert_eq!(Scalar::ratio(4, 2).to_string(), "2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Scalar::parse("1/2").unwrap(), Scalar::ratio(1, 2));
        assert_eq!(Scalar::parse("-7").unwrap(), Scalar::from_int(-7));
        assert_eq!(Scalar::parse("0.125").unwrap(), Scalar::ratio(1, 8));
        assert_eq!(Scalar::parse("-1.5").unwrap(), Scalar::ratio(-3, 2));
        assert!(matches!(
            Scalar::parse("1/0"),
            Err(ParseScalarError::ZeroDenominator)
        ));
        assert!(Scalar::parse("abc").is_err());
        assert!(Scalar::parse("").is_err());
        assert!(Scalar::parse("1/-").is_err());
    }

    #[test]
    fn serde_string_form() {
        let v = vec![Scalar::ratio(1, 3), Scalar::from_int(2)];
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"["1/3","2"]"#);
        let back: Vec<Scalar> = serde_json::from_str(r#"["1/3", 2]"#).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn approximation_is_close() {
        let a = Scalar::approximate(std::f64::consts::PI, 1000);
        assert_eq!(a, Scalar::ratio(355, 113));
        assert_eq!(Scalar::approximate(0.0, 64), Scalar::zero());
        assert_eq!(Scalar::approximate(1.0, 64), Scalar::one());
        let b = Scalar::approximate(0.41421356, 64);
        assert!((b.to_f64() - 0.41421356).abs() < 1e-3);
    }

    #[test]
    fn add_sub_exact() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(1, 7);
        assert_eq!(&(&a + &b) - &b, a);
    }
}
