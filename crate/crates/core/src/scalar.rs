//! Exact rational scalars.
//!
//! Every quantity in the model (payoffs, pressure levels, thresholds) is a
//! [`Scalar`]. Region boundaries are decided by exact sign tests, so floating
//! point never enters the analysis; `to_f64` exists only for drawing.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An exact rational number in canonical form (reduced, positive denominator).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty number")]
    Empty,
    #[error("malformed number `{0}` (expected an integer, a decimal like 0.45, or a fraction like 39/85)")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Scalar {
    /// `numer / denom`. Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn int(value: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
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

    /// Sign as an ordering relative to zero.
    pub fn sign(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Scalar(self.0.recip())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Nearest `f64`; for rendering only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `true` when `0 <= self <= 1`.
    pub fn in_unit_interval(&self) -> bool {
        !self.is_negative() && self <= &Scalar::one()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Scalar {
    fn from(value: BigRational) -> Self {
        Scalar(value)
    }
}

impl From<i64> for Scalar {
    fn from(value: i64) -> Self {
        Scalar::int(value)
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

fn parse_integer(text: &str, whole: &str) -> Result<BigInt, ParseScalarError> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseScalarError::Malformed(whole.to_string()));
    }
    text.trim_start_matches('+')
        .parse::<BigInt>()
        .map_err(|_| ParseScalarError::Malformed(whole.to_string()))
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `"3"`, `"-0.45"`, `"39/85"`. Decimals are read exactly.
    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let s = raw.trim();
        if s.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num = parse_integer(num.trim(), raw)?;
            let den = den.trim();
            if den.starts_with(['+', '-']) {
                return Err(ParseScalarError::Malformed(raw.to_string()));
            }
            let den = parse_integer(den, raw)?;
            if den.is_zero() {
                return Err(ParseScalarError::ZeroDenominator(raw.to_string()));
            }
            return Ok(Scalar(BigRational::new(num, den)));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let negative = int_part.starts_with('-');
            let int_digits = int_part.strip_prefix(['+', '-']).unwrap_or(int_part);
            if (int_digits.is_empty() && frac_part.is_empty())
                || !int_digits.bytes().all(|b| b.is_ascii_digit())
                || !frac_part.bytes().all(|b| b.is_ascii_digit())
            {
                return Err(ParseScalarError::Malformed(raw.to_string()));
            }
            let combined = format!("{int_digits}{frac_part}");
            let mut numer: BigInt = combined
                .parse()
                .map_err(|_| ParseScalarError::Malformed(raw.to_string()))?;
            if negative {
                numer = -numer;
            }
            let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
            return Ok(Scalar(BigRational::new(numer, denom)));
        }
        Ok(Scalar(BigRational::from_integer(parse_integer(s, raw)?)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Visitor;

        impl de::Visitor<'_> for Visitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a number string such as \"0.45\" or \"39/85\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
                Ok(Scalar::int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
                Ok(Scalar(BigRational::from_integer(BigInt::from(v))))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Scalar, E> {
                Err(E::custom(format!(
                    "floating-point literal {v} is not exact; quote it as a string, e.g. \"{v}\""
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(Visitor)
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

binary_op!(Add, add);
binary_op!(Sub, sub);
binary_op!(Mul, mul);
binary_op!(Div, div);

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

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Shorthand for `Scalar::new(n, d)`.
pub fn q(numer: i64, denom: i64) -> Scalar {
    Scalar::new(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!("0.45".parse::<Scalar>().unwrap(), q(9, 20));
        assert_eq!("-0.5".parse::<Scalar>().unwrap(), q(-1, 2));
        assert_eq!(".25".parse::<Scalar>().unwrap(), q(1, 4));
        assert_eq!("3.".parse::<Scalar>().unwrap(), Scalar::int(3));
        assert_eq!("+7".parse::<Scalar>().unwrap(), Scalar::int(7));
    }

    #[test]
    fn parses_fractions_in_canonical_form() {
        let s: Scalar = "78/170".parse().unwrap();
        assert_eq!(s, q(39, 85));
        assert_eq!(s.to_string(), "39/85");
        assert!("3/-6".parse::<Scalar>().is_err(), "signed denominators are rejected");
        assert_eq!("-6/4".parse::<Scalar>().unwrap().to_string(), "-3/2");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1.2.3", "0x10", "1e3", "/3", "-", "."] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should not parse");
        }
        assert_eq!(
            "5/0".parse::<Scalar>(),
            Err(ParseScalarError::ZeroDenominator("5/0".into()))
        );
    }

    #[test]
    fn display_of_integers_has_no_denominator() {
        assert_eq!(Scalar::int(-3).to_string(), "-3");
        assert_eq!((q(108, 17) - q(6, 17) * Scalar::int(18)).to_string(), "0");
    }

    #[test]
    fn json_round_trip_is_a_string() {
        let s = q(108, 17);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "\"108/17\"");
        assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), s);
        assert_eq!(serde_json::from_str::<Scalar>("4").unwrap(), Scalar::int(4));
        assert!(serde_json::from_str::<Scalar>("0.5").is_err());
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..100_000) {
            let s = q(n, d);
            prop_assert_eq!(s.to_string().parse::<Scalar>().unwrap(), s);
        }

        #[test]
        fn field_identities(a in -500i64..500, b in 1i64..50, c in -500i64..500, d in 1i64..50) {
            let x = q(a, b);
            let y = q(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x.clone());
            }
            prop_assert_eq!((&x - &y).sign(), x.cmp(&y));
        }
    }
}
