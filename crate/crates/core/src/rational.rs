//! Exact rational helpers. Every invariant in the combinatorial layer is a
//! [`Rational`]; nothing is rounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn as_i64(value: &Rational) -> Option<i64> {
    if value.is_integer() {
        value.to_integer().to_i64()
    } else {
        None
    }
}

/// Integers print as integers and everything else as `p/q`.
pub fn display(value: &Rational) -> String {
    if value.is_integer() {
        value.to_integer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// JSON form: a number when integral, otherwise the string `"p/q"`.
pub fn to_json(value: &Rational) -> Value {
    match as_i64(value) {
        Some(v) => Value::from(v),
        None => Value::from(display(value)),
    }
}

pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn sign_of(value: &Rational) -> i64 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Fractional part in `[0, 1)`.
pub fn fract(value: &Rational) -> Rational {
    let floor = value.numer().div_floor(value.denom());
    value - Rational::from_integer(floor)
}

pub fn is_one(value: &Rational) -> bool {
    value.is_one()
}

pub(crate) mod serde_str {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::display(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).ok_or_else(|| de::Error::custom(format!("bad rational {text:?}")))
    }

    pub mod vec {
        use serde::{de, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        use super::super::{display, parse, Rational};

        pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&display(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .into_iter()
                .map(|t| parse(&t).ok_or_else(|| de::Error::custom(format!("bad rational {t:?}"))))
                .collect()
        }
    }
}
