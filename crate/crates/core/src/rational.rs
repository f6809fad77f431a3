//! Exact rationals and their text/JSON encoding.
//!
//! Rationals are written as `"p/q"` or `"p"` (integers). On input, JSON
//! integers are accepted as well; on output the string form is always used so
//! that write → read → write is byte-stable.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses `"p"`, `"-p"`, `"p/q"` with optional surrounding whitespace.
pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| err())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err());
    }
    Ok(Q::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` (reduced, q > 0) otherwise.
pub fn format_q(x: &Q) -> String {
    x.to_string()
}

/// Serde wrapper writing a rational as its canonical string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatStr(pub Q);

impl From<Q> for RatStr {
    fn from(x: Q) -> Self {
        RatStr(x)
    }
}

impl fmt::Display for RatStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for RatStr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RatVisitor;

        impl Visitor<'_> for RatVisitor {
            type Value = RatStr;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\" string or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<RatStr, E> {
                parse_q(v).map(RatStr).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RatStr, E> {
                Ok(RatStr(q(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RatStr, E> {
                Ok(RatStr(Q::from_integer(BigInt::from(v))))
            }
        }

        d.deserialize_any(RatVisitor)
    }
}

pub fn to_strs(v: &[Q]) -> Vec<RatStr> {
    v.iter().cloned().map(RatStr).collect()
}

pub fn from_strs(v: &[RatStr]) -> Vec<Q> {
    v.iter().map(|r| r.0.clone()).collect()
}
