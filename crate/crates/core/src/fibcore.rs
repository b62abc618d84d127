//! Extended and generalized Fibonacci sequences, the ring Z[φ], and
//! golden-ratio approximations.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decimal::Decimal;
use crate::error::{Error, Result};
use crate::exact::{int_json, ExactInt, ExactRational};

/// Extended Fibonacci number `F_k` for any integer `k`.
///
/// Fast doubling on `|k|`, then `F_{-k} = (-1)^{k+1} F_k`.
pub fn fib(k: i64) -> ExactInt {
    let n = k.unsigned_abs();
    let value = fib_nonneg(n);
    if k < 0 && n.is_multiple_of(2) {
        -value
    } else {
        value
    }
}

fn fib_nonneg(n: u64) -> ExactInt {
    // (a, b) = (F_i, F_{i+1}) while consuming bits of n from the top
    let mut a = ExactInt::zero();
    let mut b = ExactInt::one();
    for bit in (0..u64::BITS - n.leading_zeros()).rev() {
        let c = &a * (&b * 2u32 - &a);
        let d = &a * &a + &b * &b;
        if (n >> bit) & 1 == 1 {
            b = &c + &d;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    a
}

/// `F_{k+1} / F_k`, reduced. Undefined at `k = 0`.
pub fn fib_ratio(k: i64) -> Result<ExactRational> {
    let denominator = fib(k);
    if denominator.is_zero() {
        return Err(Error::DivisionByZero(format!("F_{k} = 0")));
    }
    Ok(ExactRational::new(fib(k + 1), denominator))
}

/// Seed `(G_1, G_2) = (a, b)` of a generalized Fibonacci sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSeed")]
pub struct GeneralizedFibSeed {
    #[serde(with = "int_json")]
    a: ExactInt,
    #[serde(with = "int_json")]
    b: ExactInt,
}

#[derive(Deserialize)]
struct RawSeed {
    #[serde(with = "int_json")]
    a: ExactInt,
    #[serde(with = "int_json")]
    b: ExactInt,
}

impl TryFrom<RawSeed> for GeneralizedFibSeed {
    type Error = Error;

    fn try_from(raw: RawSeed) -> Result<Self> {
        Self::new(raw.a, raw.b)
    }
}

impl GeneralizedFibSeed {
    pub fn new(a: impl Into<ExactInt>, b: impl Into<ExactInt>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroSeed);
        }
        Ok(Self { a, b })
    }

    /// The seed `(1, n)` whose terms are the affine factors `F_{m-1} n + F_{m-2}`.
    pub fn generator(n: u64) -> Self {
        Self {
            a: ExactInt::one(),
            b: ExactInt::from(n),
        }
    }

    /// The standard Fibonacci sequence, `G_m = F_m`.
    pub fn standard() -> Self {
        Self::generator(1)
    }

    pub fn a(&self) -> &ExactInt {
        &self.a
    }

    pub fn b(&self) -> &ExactInt {
        &self.b
    }

    /// `μ = a² + ab − b²`.
    pub fn characteristic(&self) -> ExactInt {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// `G_m` for any integer `m`, as `a·F_{m-2} + b·F_{m-1}`.
    ///
    /// Below index 1 this agrees with the backward recurrence
    /// `G_{m-1} = G_{m+1} − G_m`.
    pub fn term(&self, m: i64) -> ExactInt {
        &self.a * fib(m - 2) + &self.b * fib(m - 1)
    }

    /// `G_from ..= G_to` by forward recurrence.
    pub fn terms(&self, from: i64, to: i64) -> Vec<ExactInt> {
        if to < from {
            return Vec::new();
        }
        let mut out = Vec::with_capacity((to - from + 1) as usize);
        let mut prev = self.term(from);
        out.push(prev.clone());
        if to > from {
            let mut cur = self.term(from + 1);
            out.push(cur.clone());
            for _ in from + 2..=to {
                let next = &prev + &cur;
                out.push(next.clone());
                prev = cur;
                cur = next;
            }
        }
        out
    }
}

impl fmt::Display for GeneralizedFibSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl FromStr for GeneralizedFibSeed {
    type Err = Error;

    /// Parses `a,b` (optionally parenthesized).
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "seed `a,b`",
            input: s.to_string(),
        };
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = body.split_once(',').ok_or_else(err)?;
        let a = ExactInt::from_str(a.trim()).map_err(|_| err())?;
        let b = ExactInt::from_str(b.trim()).map_err(|_| err())?;
        Self::new(a, b)
    }
}

/// `G_m` of the sequence seeded by `seed`.
pub fn gfib(seed: &GeneralizedFibSeed, m: i64) -> ExactInt {
    seed.term(m)
}

pub fn characteristic(seed: &GeneralizedFibSeed) -> ExactInt {
    seed.characteristic()
}

/// `u·φ + v` in Z[φ], where `φ² = φ + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenElement {
    #[serde(with = "int_json")]
    pub u: ExactInt,
    #[serde(with = "int_json")]
    pub v: ExactInt,
}

impl GoldenElement {
    pub fn new(u: impl Into<ExactInt>, v: impl Into<ExactInt>) -> Self {
        Self {
            u: u.into(),
            v: v.into(),
        }
    }

    pub fn one() -> Self {
        Self::new(0, 1)
    }

    pub fn phi() -> Self {
        Self::new(1, 0)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

impl Mul for &GoldenElement {
    type Output = GoldenElement;

    fn mul(self, rhs: &GoldenElement) -> GoldenElement {
        let uu = &self.u * &rhs.u;
        GoldenElement {
            u: &uu + &self.u * &rhs.v + &rhs.u * &self.v,
            v: uu + &self.v * &rhs.v,
        }
    }
}

impl fmt::Display for GoldenElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}φ + {}", self.u, self.v)
    }
}

/// `φ^k = F_k·φ + F_{k-1}`, computed by multiplication in Z[φ].
pub fn phi_power(k: u64) -> GoldenElement {
    GoldenElement::phi().pow(k)
}

/// `α = φ` and `β = −1/φ` to a fixed number of fractional digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenConstants {
    pub alpha: Decimal,
    pub beta: Decimal,
    pub precision: u32,
}

const GUARD_DIGITS: u32 = 10;

impl GoldenConstants {
    pub fn new(precision: u32) -> Self {
        let (alpha, beta) = golden_pair(precision + GUARD_DIGITS);
        Self {
            alpha: alpha.rescale(precision),
            beta: beta.rescale(precision),
            precision,
        }
    }
}

/// `(α, β)` at `scale`, unrounded beyond the working scale.
fn golden_pair(scale: u32) -> (Decimal, Decimal) {
    let sqrt5 = Decimal::from_int(5, scale).sqrt().expect("5 > 0");
    let two = Decimal::from_int(2, scale);
    let one = Decimal::one(scale);
    let alpha = one.add(&sqrt5).div(&two).expect("nonzero");
    let beta = one.sub(&sqrt5).div(&two).expect("nonzero");
    (alpha, beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiMethod {
    /// `(1 + √5) / 2`.
    ClosedForm,
    /// `F_{k+1} / F_k` with `k = iterations`.
    Convergent,
    /// `x ← √(1 + x)` from `x = 1`.
    NestedRadical,
    /// `1 + 1/(1 + 1/(…))` unrolled to `iterations` levels.
    ContinuedFraction,
}

impl FromStr for PhiMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "closed_form" => Ok(Self::ClosedForm),
            "convergent" => Ok(Self::Convergent),
            "nested_radical" => Ok(Self::NestedRadical),
            "continued_fraction" => Ok(Self::ContinuedFraction),
            _ => Err(Error::Parse {
                what: "golden ratio method",
                input: s.to_string(),
            }),
        }
    }
}

/// Approximates φ by `method`, returning `precision` fractional digits.
pub fn phi_approx(method: PhiMethod, iterations: u32, precision: u32) -> Result<Decimal> {
    if iterations == 0 {
        return Err(Error::TooSmall {
            what: "iterations",
            min: 1,
            got: 0,
        });
    }
    if precision < 10 {
        return Err(Error::TooSmall {
            what: "precision",
            min: 10,
            got: precision as i64,
        });
    }
    let scale = precision + GUARD_DIGITS;
    let value = match method {
        PhiMethod::ClosedForm => golden_pair(scale).0,
        PhiMethod::Convergent => Decimal::from_rational(&fib_ratio(iterations as i64)?, scale),
        PhiMethod::NestedRadical => {
            let one = Decimal::one(scale);
            let mut x = one.clone();
            for _ in 0..iterations {
                x = one.add(&x).sqrt()?;
            }
            x
        }
        PhiMethod::ContinuedFraction => {
            // innermost level is a bare 1
            let one = ExactRational::one();
            let mut x = one.clone();
            for _ in 1..iterations {
                x = &one + x.recip();
            }
            Decimal::from_rational(&x, scale)
        }
    };
    Ok(value.rescale(precision))
}

/// Outcome of evaluating Binet's formula in decimal for one index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinetCheck {
    pub k: i64,
    pub precision: u32,
    /// `(α^k − β^k)/(α − β)` before rounding.
    pub value: Decimal,
    #[serde(with = "int_json")]
    pub rounded: ExactInt,
    #[serde(with = "int_json")]
    pub expected: ExactInt,
    /// `|value − rounded|`.
    pub residual: Decimal,
    pub matches: bool,
}

pub const BINET_MAX_INDEX: i64 = 300;

/// Evaluates Binet's formula at `k` with `precision` correct fractional
/// digits and compares the rounded value with [`fib`].
///
/// Working precision grows with `|k|` so the absolute error of the result
/// stays below `10^-precision` even though `α^k` has about `0.209·|k|`
/// integer digits.
pub fn binet_check(k: i64, precision: u32) -> Result<BinetCheck> {
    if k.abs() > BINET_MAX_INDEX {
        return Err(Error::TooLarge {
            what: "|k|",
            max: BINET_MAX_INDEX,
            got: k.abs(),
        });
    }
    let magnitude_digits = (k.unsigned_abs() as f64 * 0.208_987_640_249_978_73).ceil() as u32;
    let scale = precision + magnitude_digits + GUARD_DIGITS;
    let (alpha, beta) = golden_pair(scale);
    let e = k.unsigned_abs() as u32;
    let (alpha_k, beta_k) = if k >= 0 {
        (alpha.powi(e), beta.powi(e))
    } else {
        // α⁻¹ = −β and β⁻¹ = −α
        (beta.neg().powi(e), alpha.neg().powi(e))
    };
    let value = alpha_k.sub(&beta_k).div(&alpha.sub(&beta))?;
    let rounded = value.round_to_integer();
    let residual = value.sub(&Decimal::from_int(rounded.clone(), scale)).abs();
    let quarter = Decimal::from_rational(&ExactRational::new(1.into(), 4.into()), scale);
    if residual > quarter {
        return Err(Error::PrecisionInsufficient {
            residual: residual.rescale(precision).to_string(),
        });
    }
    let expected = fib(k);
    Ok(BinetCheck {
        k,
        precision,
        value: value.rescale(precision),
        matches: rounded == expected,
        rounded,
        expected,
        residual: residual.rescale(precision),
    })
}
