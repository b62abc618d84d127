//! Exact value types and their JSON encodings.
//!
//! Integers are emitted as JSON numbers carrying every digit, rationals as
//! `"p/q"` strings. Both parse back to the identical value.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Reduced rational with a strictly positive denominator.
pub type ExactRational = BigRational;

/// `(-1)^e` for any integer exponent.
pub fn neg_one_pow(e: i64) -> ExactInt {
    if e.rem_euclid(2) == 0 {
        ExactInt::one()
    } else {
        -ExactInt::one()
    }
}

pub fn parse_int(input: &str) -> Result<ExactInt> {
    ExactInt::from_str(input.trim()).map_err(|_| Error::Parse {
        what: "integer",
        input: input.to_string(),
    })
}

/// Parses `p/q` or a bare integer into a reduced rational.
pub fn parse_rational(input: &str) -> Result<ExactRational> {
    let err = || Error::Parse {
        what: "rational",
        input: input.to_string(),
    };
    match input.trim().split_once('/') {
        Some((p, q)) => {
            let p = ExactInt::from_str(p.trim()).map_err(|_| err())?;
            let q = ExactInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(ExactRational::new(p, q))
        }
        None => Ok(ExactRational::from_integer(
            ExactInt::from_str(input.trim()).map_err(|_| err())?,
        )),
    }
}

pub fn format_rational(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn to_json_number(v: &ExactInt) -> serde_json::Number {
    // arbitrary_precision keeps the digit string verbatim
    serde_json::Number::from_str(&v.to_string()).expect("integer literal is a JSON number")
}

fn from_json_number<E: serde::de::Error>(n: serde_json::Number) -> std::result::Result<ExactInt, E> {
    ExactInt::from_str(&n.to_string()).map_err(|_| E::custom(format!("not an integer: {n}")))
}

/// Comma-separated text with a header row; integers stay unquoted.
pub fn csv_string<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub mod int_json {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::ExactInt;

    pub fn serialize<S: Serializer>(v: &ExactInt, s: S) -> Result<S::Ok, S::Error> {
        super::to_json_number(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactInt, D::Error> {
        super::from_json_number(serde_json::Number::deserialize(d)?)
    }
}

pub mod int_vec_json {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::ExactInt;

    pub fn serialize<S: Serializer>(v: &[ExactInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&super::to_json_number(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<ExactInt>, D::Error> {
        Vec::<serde_json::Number>::deserialize(d)?
            .into_iter()
            .map(super::from_json_number)
            .collect()
    }
}

pub mod rational_json {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::ExactRational;

    pub fn serialize<S: Serializer>(v: &ExactRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
