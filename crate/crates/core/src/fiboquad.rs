//! Fiboquadratic sequences.
//!
//! Two index conventions coexist and are kept explicit:
//!
//! * generator form, 0-based: `a_0 = 1`, `a_1 = n`, `a_2 = n²`, … built from
//!   the affine factors `F_k·n + F_{k-1}`;
//! * general seed form, 1-based: `(G_1², G_1G_2, G_2², G_2G_3, …)`.
//!
//! For the seed `(1, n)` the two agree after a shift of one:
//! `a_closed(m, n) == general_term(&seed(1, n), m + 1)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decimal::Decimal;
use crate::error::{Error, Result};
use crate::exact::{rational_json, ExactInt, ExactRational};
use crate::fibcore::{fib, GeneralizedFibSeed, GoldenConstants};

/// Bound on `|ratio − limit|` used to locate the convergence threshold.
pub const CONVERGENCE_TOLERANCE_EXP: i32 = -12;

/// `F_k·n + F_{k-1}`.
pub fn affine_factor(k: i64, n: u64) -> ExactInt {
    fib(k) * n + fib(k - 1)
}

/// The multiplier `b_{mn} = 1 + (F_{m-1}n + F_{m-2}) / (F_m n + F_{m-1})`.
pub fn b_coeff(m: i64, n: u64) -> Result<ExactRational> {
    let denominator = affine_factor(m, n);
    if denominator.is_zero() {
        return Err(Error::DivisionByZero(format!(
            "F_{m}·{n} + F_{} = 0",
            m - 1
        )));
    }
    Ok(ExactRational::one() + ExactRational::new(affine_factor(m - 1, n), denominator))
}

/// Index of the multiplier that takes row `m − 1` to row `m` (`m ≥ 1`).
pub fn multiplier_index(m: u32) -> i64 {
    let m = m as i64;
    if m % 2 == 1 {
        (m - 1) / 2
    } else {
        m / 2 - 1
    }
}

/// Rows `a_0 ..= a_{m_max}` by the multiplicative recursion
/// `a_m = a_{m-1} · b_{idx(m), n}`.
pub fn a_recursive_prefix(m_max: u32, n: u64) -> Result<Vec<ExactInt>> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: "generator n",
            min: 1,
            got: 0,
        });
    }
    let mut rows = Vec::with_capacity(m_max as usize + 1);
    let mut current = ExactRational::one();
    rows.push(ExactInt::one());
    for m in 1..=m_max {
        current *= b_coeff(multiplier_index(m), n)?;
        if !current.is_integer() {
            return Err(Error::NonInteger {
                index: m as i64,
                value: crate::exact::format_rational(&current),
            });
        }
        rows.push(current.to_integer());
    }
    Ok(rows)
}

/// `a_{mn}` by the multiplicative recursion.
pub fn a_recursive(m: u32, n: u64) -> Result<ExactInt> {
    let mut rows = a_recursive_prefix(m, n)?;
    Ok(rows.pop().expect("prefix contains a_0"))
}

/// `a_{mn}` in closed form; negative `m` evaluates the same formula with
/// extended Fibonacci numbers.
pub fn a_closed(m: i64, n: u64) -> ExactInt {
    if m.is_odd() {
        let h = (m - 1) / 2;
        affine_factor(h, n) * affine_factor(h + 1, n)
    } else {
        let f = affine_factor(m / 2, n);
        &f * &f
    }
}

/// `j`-th term (1-based) of the general fiboquadratic sequence over `seed`:
/// `G_m²` at `j = 2m − 1`, `G_m·G_{m+1}` at `j = 2m`.
pub fn general_term(seed: &GeneralizedFibSeed, j: i64) -> ExactInt {
    if j.is_odd() {
        let g = seed.term((j + 1) / 2);
        &g * &g
    } else {
        let m = j / 2;
        seed.term(m) * seed.term(m + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "form")]
pub enum FiboquadSequence {
    /// 0-based, `a_0 = 1`.
    Generator { n: u64 },
    /// 1-based, `a_1 = G_1²`.
    General { seed: GeneralizedFibSeed },
}

impl FiboquadSequence {
    pub fn generator(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooSmall {
                what: "generator n",
                min: 1,
                got: 0,
            });
        }
        Ok(Self::Generator { n })
    }

    pub fn general(seed: GeneralizedFibSeed) -> Self {
        Self::General { seed }
    }

    pub fn origin(&self) -> i64 {
        match self {
            Self::Generator { .. } => 0,
            Self::General { .. } => 1,
        }
    }

    pub fn term(&self, index: i64) -> ExactInt {
        match self {
            Self::Generator { n } => a_closed(index, *n),
            Self::General { seed } => general_term(seed, index),
        }
    }
}

impl fmt::Display for FiboquadSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Generator { n } => write!(f, "generator n={n}"),
            Self::General { seed } => write!(f, "seed {seed}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Ratios approach α as the index grows.
    Forward,
    /// Ratios approach β as the index decreases.
    Backward,
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Self::Forward),
            "backward" => Ok(Self::Backward),
            _ => Err(Error::Parse {
                what: "direction",
                input: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceEntry {
    /// `i` for the ratio `a_{i+1} / a_i`.
    pub index: i64,
    #[serde(with = "rational_json")]
    pub ratio: ExactRational,
    /// `|ratio − limit|` at the report precision.
    pub error: Decimal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub sequence: FiboquadSequence,
    pub direction: Direction,
    pub precision: u32,
    pub limit: Decimal,
    pub tolerance_exp: i32,
    /// Sorted by index, ascending.
    pub entries: Vec<ConvergenceEntry>,
    /// First index (walking in `direction`) from which every remaining
    /// entry is within `10^tolerance_exp` of the limit.
    pub threshold_index: Option<i64>,
}

impl ConvergenceReport {
    /// `index,ratio,abs_error_p<precision>`.
    pub fn to_csv(&self) -> String {
        let err = format!("abs_error_p{}", self.precision);
        crate::exact::csv_string(
            &["index", "ratio", &err],
            self.entries.iter().map(|e| {
                [
                    e.index.to_string(),
                    crate::exact::format_rational(&e.ratio),
                    e.error.to_string(),
                ]
            }),
        )
    }
}

/// Ratios over `origin ..= m_max` (forward) or `-m_max ..= origin - 1`
/// (backward).
pub fn convergence_report(
    sequence: &FiboquadSequence,
    m_max: u32,
    precision: u32,
    direction: Direction,
) -> Result<ConvergenceReport> {
    if m_max < 4 {
        return Err(Error::TooSmall {
            what: "m_max",
            min: 4,
            got: m_max as i64,
        });
    }
    let origin = sequence.origin();
    let (lo, hi) = match direction {
        Direction::Forward => (origin, m_max as i64),
        Direction::Backward => (-(m_max as i64), origin - 1),
    };
    convergence_window(sequence, lo, hi, precision, direction)
}

/// Ratios `a_{i+1}/a_i` for `i` in `lo ..= hi`, compared against α or β.
pub fn convergence_window(
    sequence: &FiboquadSequence,
    lo: i64,
    hi: i64,
    precision: u32,
    direction: Direction,
) -> Result<ConvergenceReport> {
    let working = precision + 10;
    let constants = GoldenConstants::new(working);
    let limit = match direction {
        Direction::Forward => constants.alpha,
        Direction::Backward => constants.beta,
    };
    let tolerance = Decimal::pow10(CONVERGENCE_TOLERANCE_EXP, precision);

    let mut entries = Vec::new();
    if lo <= hi {
        let mut next = sequence.term(lo);
        for index in lo..=hi {
            let current = next;
            next = sequence.term(index + 1);
            if current.is_zero() {
                return Err(Error::ZeroTerm(index));
            }
            let ratio = ExactRational::new(next.clone(), current);
            let error = Decimal::from_rational(&ratio, working)
                .sub(&limit)
                .abs()
                .rescale(precision);
            entries.push(ConvergenceEntry {
                index,
                ratio,
                error,
            });
        }
    }

    let within = |e: &ConvergenceEntry| e.error < tolerance;
    let threshold_index = match direction {
        Direction::Forward => {
            let tail = entries.iter().rev().take_while(|e| within(e)).count();
            (tail > 0).then(|| entries[entries.len() - tail].index)
        }
        Direction::Backward => {
            let head = entries.iter().take_while(|e| within(e)).count();
            (head > 0).then(|| entries[head - 1].index)
        }
    };

    Ok(ConvergenceReport {
        sequence: sequence.clone(),
        direction,
        precision,
        limit: limit.rescale(precision),
        tolerance_exp: CONVERGENCE_TOLERANCE_EXP,
        entries,
        threshold_index,
    })
}
