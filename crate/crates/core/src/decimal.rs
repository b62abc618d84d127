//! Fixed-point decimals over [`ExactInt`].
//!
//! A [`Decimal`] is `mantissa · 10^-scale`. Every operation rounds half away
//! from zero back to the scale of its left operand, so a computation carried
//! out at scale `s` is accurate to a few units in the `s`-th fractional digit.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{ExactInt, ExactRational};

#[derive(Debug, Clone)]
pub struct Decimal {
    mantissa: ExactInt,
    scale: u32,
}

fn pow10(e: u32) -> ExactInt {
    num_traits::pow(ExactInt::from(10), e as usize)
}

/// `n / d` rounded half away from zero; `d` must be nonzero.
fn div_round(n: &ExactInt, d: &ExactInt) -> ExactInt {
    let (q, r) = n.div_rem(d);
    if (r.abs() * 2u32) >= d.abs() {
        if n.is_negative() != d.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

impl Decimal {
    pub fn from_int(value: impl Into<ExactInt>, scale: u32) -> Self {
        Self {
            mantissa: value.into() * pow10(scale),
            scale,
        }
    }

    pub fn from_rational(value: &ExactRational, scale: u32) -> Self {
        Self {
            mantissa: div_round(&(value.numer() * pow10(scale)), value.denom()),
            scale,
        }
    }

    /// `10^exponent` at the given scale; negative exponents below the scale
    /// round to zero.
    pub fn pow10(exponent: i32, scale: u32) -> Self {
        let shift = scale as i64 + exponent as i64;
        let mantissa = if shift >= 0 {
            pow10(shift as u32)
        } else {
            ExactInt::zero()
        };
        Self { mantissa, scale }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn mantissa(&self) -> &ExactInt {
        &self.mantissa
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            scale: self.scale,
        }
    }

    pub fn rescale(&self, scale: u32) -> Self {
        let mantissa = match scale.cmp(&self.scale) {
            Ordering::Equal => self.mantissa.clone(),
            Ordering::Greater => &self.mantissa * pow10(scale - self.scale),
            Ordering::Less => div_round(&self.mantissa, &pow10(self.scale - scale)),
        };
        Self { mantissa, scale }
    }

    fn aligned(&self, other: &Self) -> ExactInt {
        other.rescale(self.scale).mantissa
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            mantissa: &self.mantissa + self.aligned(other),
            scale: self.scale,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            mantissa: &self.mantissa - self.aligned(other),
            scale: self.scale,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            mantissa: div_round(&(&self.mantissa * &other.mantissa), &pow10(other.scale)),
            scale: self.scale,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.mantissa.is_zero() {
            return Err(Error::DivisionByZero("decimal division".into()));
        }
        Ok(Self {
            mantissa: div_round(&(&self.mantissa * pow10(other.scale)), &other.mantissa),
            scale: self.scale,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            mantissa: -&self.mantissa,
            scale: self.scale,
        }
    }

    pub fn powi(&self, exponent: u32) -> Self {
        let mut result = Self::from_int(1, self.scale);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Square root, truncated at the scale. Errors on negative input.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Parse {
                what: "non-negative radicand",
                input: self.to_string(),
            });
        }
        Ok(Self {
            mantissa: (&self.mantissa * pow10(self.scale)).sqrt(),
            scale: self.scale,
        })
    }

    pub fn round_to_integer(&self) -> ExactInt {
        div_round(&self.mantissa, &pow10(self.scale))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }
}

impl PartialEq for Decimal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Decimal {}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let scale = self.scale.max(other.scale);
        self.rescale(scale)
            .mantissa
            .cmp(&other.rescale(scale).mantissa)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.abs().to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let scale = self.scale as usize;
        if scale == 0 {
            return write!(f, "{sign}{digits}");
        }
        let padded = format!("{digits:0>width$}", width = scale + 1);
        let (int, frac) = padded.split_at(padded.len() - scale);
        write!(f, "{sign}{int}.{frac}")
    }
}

impl FromStr for Decimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "decimal",
            input: s.to_string(),
        };
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty()
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        {
            return Err(err());
        }
        let digits = format!("{int}{frac}");
        let mut mantissa = ExactInt::from_str(&digits).map_err(|_| err())?;
        if neg {
            mantissa = -mantissa;
        }
        Ok(Self {
            mantissa,
            scale: frac.len() as u32,
        })
    }
}

impl serde::Serialize for Decimal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Decimal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<&Decimal> for ExactRational {
    fn from(d: &Decimal) -> Self {
        ExactRational::new(d.mantissa.clone(), pow10(d.scale))
    }
}

impl Decimal {
    pub fn one(scale: u32) -> Self {
        Self::from_int(ExactInt::one(), scale)
    }
}
