//! Exact rationals and their `"p/q"` text form.
//!
//! [`Rational`] is `num_rational::BigRational`: always in lowest terms with a
//! positive denominator. Integers print without a denominator (`"3"`), every
//! other value as `"p/q"`; parsing accepts both and rejects decimals.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `num/den` as an exact rational. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = |reason: &str| Error::ParseRational {
        input: input.to_owned(),
        reason: reason.to_owned(),
    };
    if input.is_empty() || input.chars().any(|ch| !(ch.is_ascii_digit() || ch == '-' || ch == '+' || ch == '/')) {
        return Err(err("expected \"p/q\" or an integer"));
    }
    let (num, den) = match input.split_once('/') {
        Some((n, d)) => (n, d),
        None => (input, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    let den = BigInt::from_str(den).map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn checked_div(num: &Rational, den: &Rational) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(num / den)
}

/// Nearest `f64`; the conversion is exact-rounding even for huge numerators
/// and denominators.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// `base^exp` as a rational.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// Serde adapter: one rational as a `"p/q"` string.
pub mod serde_str {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&super::format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        super::parse_rational(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter: a list of rationals as `"p/q"` strings.
pub mod serde_vec {
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(values: &[Rational], serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(values.len()))?;
        for value in values {
            seq.serialize_element(&super::format_rational(value))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(deserializer)?
            .iter()
            .map(|text| super::parse_rational(text).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter for `Option<Rational>`.
pub mod serde_opt {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Option<Rational>, serializer: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => serializer.serialize_some(&super::format_rational(v)),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(deserializer)?
            .map(|text| super::parse_rational(&text).map_err(D::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fraction_and_integer_forms() {
        assert_eq!(parse_rational("5/9").unwrap(), rat(5, 9));
        assert_eq!(parse_rational("-10/18").unwrap(), rat(-5, 9));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("4/-6").unwrap(), rat(-2, 3));
    }

    #[test]
    fn rejects_decimals_and_zero_denominators() {
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1 /2").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(checked_div(&int(1), &int(0)), Err(Error::DivisionByZero)));
        assert_eq!(checked_div(&rat(1, 2), &rat(1, 10)).unwrap(), int(5));
    }

    #[test]
    fn lowest_terms_on_output() {
        assert_eq!(format_rational(&rat(-256, 270)), "-128/135");
        assert_eq!(format_rational(&rat(4, 2)), "2");
    }

    proptest! {
        #[test]
        fn text_round_trip(num in any::<i64>(), den in 1i64..i64::MAX) {
            let value = rat(num, den);
            prop_assert_eq!(parse_rational(&format_rational(&value)).unwrap(), value);
        }
    }
}
