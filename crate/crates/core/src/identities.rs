//! Exact verification of Cassini-type identities.
//!
//! Each check evaluates both sides with integers only and returns a
//! [`VerificationRecord`] holding the two sides and their difference.
//! [`sweep`] runs one identity over a finite parameter grid.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int_json, neg_one_pow, ExactInt};
use crate::fibcore::{fib, GeneralizedFibSeed};
use crate::fiboquad::general_term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    Cassini,
    Catalan,
    Vajda,
    TagiuriOdd,
    TagiuriEven,
    ColumnConjecture,
    /// Reduced form `F_{m+2}F_{m+4} = F_{m+3}² − (−1)^m` of the column sum.
    ColumnReduced,
    RowSum,
    SumOfSquares,
}

impl IdentityKind {
    pub const SWEEPABLE: [IdentityKind; 8] = [
        Self::Cassini,
        Self::Catalan,
        Self::Vajda,
        Self::TagiuriOdd,
        Self::TagiuriEven,
        Self::ColumnConjecture,
        Self::RowSum,
        Self::SumOfSquares,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Cassini => "cassini",
            Self::Catalan => "catalan",
            Self::Vajda => "vajda",
            Self::TagiuriOdd => "tagiuri-odd",
            Self::TagiuriEven => "tagiuri-even",
            Self::ColumnConjecture => "column-conjecture",
            Self::ColumnReduced => "column-reduced",
            Self::RowSum => "row-sum",
            Self::SumOfSquares => "sum-of-squares",
        }
    }

    fn uses_seeds(self) -> bool {
        matches!(
            self,
            Self::TagiuriOdd | Self::TagiuriEven | Self::RowSum | Self::SumOfSquares
        )
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let kind = match key.as_str() {
            "cassini" => Self::Cassini,
            "catalan" => Self::Catalan,
            "vajda" => Self::Vajda,
            "tagiuri-odd" => Self::TagiuriOdd,
            "tagiuri-even" => Self::TagiuriEven,
            "column-conjecture" | "column" => Self::ColumnConjecture,
            "column-reduced" => Self::ColumnReduced,
            "row-sum" | "row-sum-law" => Self::RowSum,
            "sum-of-squares" => Self::SumOfSquares,
            _ => return Err(Error::UnknownIdentity(s.to_string())),
        };
        Ok(kind)
    }
}

/// Parameters a record was evaluated at; absent ones are omitted from JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<GeneralizedFibSeed>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<i64>,
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(s) = &self.seed {
            parts.push(format!("seed={s}"));
        }
        for (name, v) in [("m", self.m), ("k", self.k), ("j", self.j)] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub identity: IdentityKind,
    pub params: Params,
    #[serde(with = "int_json")]
    pub lhs: ExactInt,
    #[serde(with = "int_json")]
    pub rhs: ExactInt,
    /// `lhs − rhs`.
    #[serde(with = "int_json")]
    pub residual: ExactInt,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Companion checks evaluated alongside this one.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub related: Vec<VerificationRecord>,
}

impl VerificationRecord {
    fn new(identity: IdentityKind, params: Params, lhs: ExactInt, rhs: ExactInt) -> Self {
        let residual = &lhs - &rhs;
        Self {
            identity,
            params,
            holds: residual.is_zero(),
            lhs,
            rhs,
            residual,
            note: None,
            related: Vec::new(),
        }
    }
}

fn params_mk(m: i64, k: i64) -> Params {
    Params {
        m: Some(m),
        k: Some(k),
        ..Params::default()
    }
}

/// `F_{m−1}F_{m+1} − F_m² = (−1)^m`.
pub fn cassini(m: i64) -> VerificationRecord {
    let fm = fib(m);
    let lhs = fib(m - 1) * fib(m + 1) - &fm * &fm;
    VerificationRecord::new(
        IdentityKind::Cassini,
        Params {
            m: Some(m),
            ..Params::default()
        },
        lhs,
        neg_one_pow(m),
    )
}

/// `F_{m+k}F_{m−k} − F_m² = (−1)^{m+k+1} F_k²`.
pub fn catalan(m: i64, k: i64) -> VerificationRecord {
    let fm = fib(m);
    let fk = fib(k);
    let lhs = fib(m + k) * fib(m - k) - &fm * &fm;
    let rhs = neg_one_pow(m + k + 1) * &fk * &fk;
    VerificationRecord::new(IdentityKind::Catalan, params_mk(m, k), lhs, rhs)
}

/// `F_{m+k+1}F_{m−k} − F_mF_{m+1} = (−1)^{m+k+1} F_kF_{k+1}`.
pub fn vajda(m: i64, k: i64) -> VerificationRecord {
    let lhs = fib(m + k + 1) * fib(m - k) - fib(m) * fib(m + 1);
    let rhs = neg_one_pow(m + k + 1) * fib(k) * fib(k + 1);
    VerificationRecord::new(IdentityKind::Vajda, params_mk(m, k), lhs, rhs)
}

fn seeded(seed: &GeneralizedFibSeed, m: i64, k: i64) -> Params {
    Params {
        seed: Some(seed.clone()),
        ..params_mk(m, k)
    }
}

/// `G_{m+k}G_{m−k} − G_m² = (−1)^{m+k+1} μ F_k²`.
pub fn tagiuri_odd(seed: &GeneralizedFibSeed, m: i64, k: i64) -> VerificationRecord {
    let gm = seed.term(m);
    let fk = fib(k);
    let lhs = seed.term(m + k) * seed.term(m - k) - &gm * &gm;
    let rhs = neg_one_pow(m + k + 1) * seed.characteristic() * &fk * &fk;
    VerificationRecord::new(IdentityKind::TagiuriOdd, seeded(seed, m, k), lhs, rhs)
}

/// `G_{m+k+1}G_{m−k} − G_mG_{m+1} = (−1)^{m+k+1} μ F_kF_{k+1}`.
pub fn tagiuri_even(seed: &GeneralizedFibSeed, m: i64, k: i64) -> VerificationRecord {
    let lhs = seed.term(m + k + 1) * seed.term(m - k) - seed.term(m) * seed.term(m + 1);
    let rhs = neg_one_pow(m + k + 1) * seed.characteristic() * fib(k) * fib(k + 1);
    VerificationRecord::new(IdentityKind::TagiuriEven, seeded(seed, m, k), lhs, rhs)
}

/// The column-sum conjecture
/// `(2F_m+F_{m−1})² + (2F_m+F_{m−1})(2F_{m+1}+F_m) = (2F_{m+1}+F_m)² − (−1)^m`,
/// with its reduced Cassini form attached as a related record.
pub fn column_conjecture(m: i64) -> VerificationRecord {
    let x = fib(m) * 2u32 + fib(m - 1);
    let y = fib(m + 1) * 2u32 + fib(m);
    let lhs = &x * &x + &x * &y;
    let rhs = &y * &y - neg_one_pow(m);
    let only_m = Params {
        m: Some(m),
        ..Params::default()
    };
    let f3 = fib(m + 3);
    let reduced = VerificationRecord::new(
        IdentityKind::ColumnReduced,
        only_m.clone(),
        fib(m + 2) * fib(m + 4),
        &f3 * &f3 - neg_one_pow(m),
    );
    let mut record = VerificationRecord::new(IdentityKind::ColumnConjecture, only_m, lhs, rhs);
    record.related.push(reduced);
    record
}

/// Column constant `c_n = n² − n − 1`.
pub fn fixed_constant_closed(n: u64) -> ExactInt {
    let n = ExactInt::from(n);
    &n * &n - &n - 1
}

/// Column constant by `c_0 = −1`, `c_n = c_{n−1} + 2(n − 1)`.
pub fn fixed_constant_recurrence(n: u64) -> ExactInt {
    (1..=n).fold(ExactInt::from(-1), |c, i| c + 2 * (i as i64 - 1))
}

/// Column constant `c_n`; closed form and recurrence must agree and equal
/// `−μ` of the seed `(1, n)`.
pub fn fixed_constant(n: u64) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::TooSmall {
            what: "generator n",
            min: 1,
            got: 0,
        });
    }
    let closed = fixed_constant_closed(n);
    assert_eq!(closed, fixed_constant_recurrence(n), "c_{n} closed form vs recurrence");
    assert_eq!(
        closed,
        -GeneralizedFibSeed::generator(n).characteristic(),
        "c_{n} vs characteristic"
    );
    Ok(closed)
}

pub const ROW_SUM_SIGN_NOTE: &str = "odd step uses a_j + a_{j+1} = a_{j+2} + (-1)^(m+1)·mu with \
j = 2m-1; the exponent (m+1)/2 gives the wrong sign already at j = 1";

/// Row-sum law on the 1-based general fiboquadratic sequence:
/// `a_j + a_{j+1} = a_{j+2}` for even `j`, and
/// `a_j + a_{j+1} = a_{j+2} + (−1)^{m+1} μ` for odd `j = 2m − 1`.
pub fn row_sum_law(seed: &GeneralizedFibSeed, j: i64) -> Result<VerificationRecord> {
    if j < 1 {
        return Err(Error::TooSmall {
            what: "j",
            min: 1,
            got: j,
        });
    }
    let a = |i| general_term(seed, i);
    let lhs = a(j) + a(j + 1);
    let params = Params {
        seed: Some(seed.clone()),
        j: Some(j),
        ..Params::default()
    };
    if j % 2 == 0 {
        return Ok(VerificationRecord::new(IdentityKind::RowSum, params, lhs, a(j + 2)));
    }
    let m = (j + 1) / 2;
    let rhs = a(j + 2) + neg_one_pow(m + 1) * seed.characteristic();
    let mut record = VerificationRecord::new(IdentityKind::RowSum, params, lhs, rhs);
    record.note = Some(ROW_SUM_SIGN_NOTE.to_string());
    Ok(record)
}

/// Observed correction `a_j + a_{j+1} − a_{j+2}`, independent of any law.
pub fn row_sum_correction(seed: &GeneralizedFibSeed, j: i64) -> ExactInt {
    general_term(seed, j) + general_term(seed, j + 1) - general_term(seed, j + 2)
}

/// `G_1² + ⋯ + G_m² = a(a − b) + G_mG_{m+1}`.
pub fn sum_of_squares(seed: &GeneralizedFibSeed, m: i64) -> Result<VerificationRecord> {
    if m < 1 {
        return Err(Error::TooSmall {
            what: "m",
            min: 1,
            got: m,
        });
    }
    let terms = seed.terms(1, m + 1);
    let lhs: ExactInt = terms[..m as usize].iter().map(|g| g * g).sum();
    let (a, b) = (seed.a(), seed.b());
    let rhs = a * (a - b) + &terms[m as usize - 1] * &terms[m as usize];
    Ok(VerificationRecord::new(
        IdentityKind::SumOfSquares,
        Params {
            seed: Some(seed.clone()),
            m: Some(m),
            ..Params::default()
        },
        lhs,
        rhs,
    ))
}

/// Inclusive integer range, written `lo..hi` (or a single value).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexRange {
    pub lo: i64,
    pub hi: i64,
}

impl IndexRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn len(&self) -> u64 {
        if self.hi < self.lo {
            0
        } else {
            (self.hi - self.lo) as u64 + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for IndexRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "index range `lo..hi`",
            input: s.to_string(),
        };
        let t = s.trim();
        let (lo, hi) = match t.split_once("..") {
            Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
            None => (t, t),
        };
        let lo: i64 = lo.trim().parse().map_err(|_| err())?;
        let hi: i64 = hi.trim().parse().map_err(|_| err())?;
        if hi < lo {
            return Err(err());
        }
        Ok(Self { lo, hi })
    }
}

/// Fixed generator seed for random seed sweeps.
pub const DEFAULT_RNG_SEED: u64 = 0x5EED_F1B0;
pub const DEFAULT_SEED_BOUND: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "source")]
pub enum SeedSource {
    List { seeds: Vec<GeneralizedFibSeed> },
    /// `count` seeds with components uniform in `[-bound, bound]`, drawn
    /// from ChaCha8 seeded with `rng_seed`; `(0, 0)` draws are skipped.
    Random { count: usize, rng_seed: u64, bound: i64 },
}

impl SeedSource {
    pub fn random(count: usize) -> Self {
        Self::Random {
            count,
            rng_seed: DEFAULT_RNG_SEED,
            bound: DEFAULT_SEED_BOUND,
        }
    }

    pub fn seeds(&self) -> Vec<GeneralizedFibSeed> {
        match self {
            Self::List { seeds } => seeds.clone(),
            Self::Random {
                count,
                rng_seed,
                bound,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*rng_seed);
                let mut out = Vec::with_capacity(*count);
                while out.len() < *count {
                    let a = rng.random_range(-bound..=*bound);
                    let b = rng.random_range(-bound..=*bound);
                    if let Ok(seed) = GeneralizedFibSeed::new(a, b) {
                        out.push(seed);
                    }
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepGrid {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<IndexRange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<IndexRange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<IndexRange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<SeedSource>,
}

impl SweepGrid {
    /// The grid each identity is checked over by default.
    pub fn default_for(kind: IdentityKind) -> Self {
        let r = IndexRange::new;
        match kind {
            IdentityKind::Cassini => Self {
                m: Some(r(-200, 200)),
                ..Self::default()
            },
            IdentityKind::Catalan | IdentityKind::Vajda => Self {
                m: Some(r(-100, 100)),
                k: Some(r(0, 25)),
                ..Self::default()
            },
            IdentityKind::TagiuriOdd | IdentityKind::TagiuriEven => Self {
                m: Some(r(-20, 20)),
                k: Some(r(0, 10)),
                seeds: Some(SeedSource::random(100)),
                ..Self::default()
            },
            IdentityKind::ColumnConjecture | IdentityKind::ColumnReduced => Self {
                m: Some(r(-50, 50)),
                ..Self::default()
            },
            IdentityKind::RowSum => Self {
                j: Some(r(1, 99)),
                seeds: Some(SeedSource::List {
                    seeds: (2..=9).map(GeneralizedFibSeed::generator).collect(),
                }),
                ..Self::default()
            },
            IdentityKind::SumOfSquares => Self {
                m: Some(r(1, 200)),
                seeds: Some(SeedSource::random(100)),
                ..Self::default()
            },
        }
    }

    /// Keeps only the dimensions `kind` uses, filling missing ones from
    /// [`SweepGrid::default_for`].
    pub fn resolved_for(&self, kind: IdentityKind) -> Self {
        let d = Self::default_for(kind);
        Self {
            m: d.m.and(self.m.or(d.m)),
            k: d.k.and(self.k.or(d.k)),
            j: d.j.and(self.j.or(d.j)),
            seeds: d.seeds.clone().and(self.seeds.clone().or(d.seeds)),
        }
    }

    /// Keeps only the dimensions `kind` uses.
    pub fn restricted_to(&self, kind: IdentityKind) -> Self {
        let d = Self::default_for(kind);
        Self {
            m: d.m.and(self.m),
            k: d.k.and(self.k),
            j: d.j.and(self.j),
            seeds: d.seeds.and(self.seeds.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub identity: IdentityKind,
    pub grid: SweepGrid,
    pub cases: u64,
    pub violations: Vec<VerificationRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// One line per violation; an all-holding sweep yields only the header.
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
        crate::exact::csv_string(
            &["identity", "m", "k", "j", "seed_a", "seed_b", "lhs", "rhs", "residual"],
            self.violations.iter().map(|r| {
                let (a, b) = r
                    .params
                    .seed
                    .as_ref()
                    .map(|s| (s.a().to_string(), s.b().to_string()))
                    .unwrap_or_default();
                [
                    r.identity.name().to_string(),
                    opt(r.params.m),
                    opt(r.params.k),
                    opt(r.params.j),
                    a,
                    b,
                    r.lhs.to_string(),
                    r.rhs.to_string(),
                    r.residual.to_string(),
                ]
            }),
        )
    }
}

fn require<T: Clone>(value: &Option<T>, kind: IdentityKind, parameter: &'static str) -> Result<T> {
    value.clone().ok_or(Error::MissingParameter {
        identity: kind.name(),
        parameter,
    })
}

/// Runs `kind` over every point of `grid`.
///
/// Points are evaluated in parallel; violations come back in grid order
/// (seeds outermost, then `m`, then `k` / `j`).
pub fn sweep(kind: IdentityKind, grid: &SweepGrid) -> Result<SweepReport> {
    let seeds = if kind.uses_seeds() {
        require(&grid.seeds, kind, "seeds")?.seeds()
    } else {
        Vec::new()
    };
    let mut notes = Vec::new();

    let violations: Vec<VerificationRecord> = match kind {
        IdentityKind::Cassini | IdentityKind::ColumnConjecture | IdentityKind::ColumnReduced => {
            let m = require(&grid.m, kind, "m")?;
            let check = move |m: i64| match kind {
                IdentityKind::Cassini => cassini(m),
                IdentityKind::ColumnReduced => column_conjecture(m).related.remove(0),
                _ => {
                    let mut r = column_conjecture(m);
                    // both forms must hold for the point to pass
                    if !r.related.iter().all(|x| x.holds) {
                        r.holds = false;
                    }
                    r
                }
            };
            collect_failures(m.iter().collect::<Vec<_>>(), check)
        }
        IdentityKind::Catalan | IdentityKind::Vajda => {
            let (m, k) = (require(&grid.m, kind, "m")?, require(&grid.k, kind, "k")?);
            let points: Vec<_> = m.iter().flat_map(|m| k.iter().map(move |k| (m, k))).collect();
            let f = if kind == IdentityKind::Catalan { catalan } else { vajda };
            collect_failures(points, |(m, k)| f(m, k))
        }
        IdentityKind::TagiuriOdd | IdentityKind::TagiuriEven => {
            let (m, k) = (require(&grid.m, kind, "m")?, require(&grid.k, kind, "k")?);
            let points: Vec<_> = seeds
                .iter()
                .flat_map(|s| m.iter().flat_map(move |m| k.iter().map(move |k| (s, m, k))))
                .collect();
            let f = if kind == IdentityKind::TagiuriOdd {
                tagiuri_odd
            } else {
                tagiuri_even
            };
            collect_failures(points, |(s, m, k)| f(s, m, k))
        }
        IdentityKind::RowSum => {
            let j = require(&grid.j, kind, "j")?;
            if j.lo < 1 {
                return Err(Error::TooSmall {
                    what: "j",
                    min: 1,
                    got: j.lo,
                });
            }
            for s in &seeds {
                notes.push(format!(
                    "seed {s}: odd-step correction has magnitude |mu| = {}",
                    num_traits::Signed::abs(&s.characteristic())
                ));
            }
            notes.push(ROW_SUM_SIGN_NOTE.to_string());
            let points: Vec<_> = seeds
                .iter()
                .flat_map(|s| j.iter().map(move |j| (s, j)))
                .collect();
            collect_failures(points, |(s, j)| row_sum_law(s, j).expect("j >= 1"))
        }
        IdentityKind::SumOfSquares => {
            let m = require(&grid.m, kind, "m")?;
            if m.lo < 1 {
                return Err(Error::TooSmall {
                    what: "m",
                    min: 1,
                    got: m.lo,
                });
            }
            // one pass per seed: running sums against the closed form
            seeds
                .par_iter()
                .map(|s| sum_of_squares_run(s, m))
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        }
    };

    let grid = grid.restricted_to(kind);
    let len = |r: &Option<IndexRange>| r.map_or(1, |r| r.len());
    let mut cases = len(&grid.m) * len(&grid.k) * len(&grid.j);
    if kind.uses_seeds() {
        cases *= seeds.len() as u64;
    }
    Ok(SweepReport {
        identity: kind,
        grid,
        cases,
        violations,
        notes,
    })
}

fn collect_failures<P, F>(points: Vec<P>, check: F) -> Vec<VerificationRecord>
where
    P: Send,
    F: Fn(P) -> VerificationRecord + Sync + Send,
{
    points
        .into_par_iter()
        .map(check)
        .filter(|r| !r.holds)
        .collect()
}

fn sum_of_squares_run(seed: &GeneralizedFibSeed, m: IndexRange) -> Vec<VerificationRecord> {
    let terms = seed.terms(1, m.hi + 1);
    let (a, b) = (seed.a(), seed.b());
    let offset = a * (a - b);
    let mut running = ExactInt::zero();
    let mut failures = Vec::new();
    for i in 1..=m.hi {
        let g = &terms[i as usize - 1];
        running += g * g;
        if i < m.lo {
            continue;
        }
        let rhs = &offset + g * &terms[i as usize];
        if running != rhs {
            failures.push(VerificationRecord::new(
                IdentityKind::SumOfSquares,
                Params {
                    seed: Some(seed.clone()),
                    m: Some(i),
                    ..Params::default()
                },
                running.clone(),
                rhs,
            ));
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(a: i64, b: i64) -> GeneralizedFibSeed {
        GeneralizedFibSeed::new(a, b).unwrap()
    }

    fn holds_with(r: &VerificationRecord, lhs: i64, rhs: i64) {
        assert_eq!(r.lhs, lhs.into(), "{r:?}");
        assert_eq!(r.rhs, rhs.into(), "{r:?}");
        assert!(r.holds);
        assert!(r.residual.is_zero());
    }

    #[test]
    fn cassini_examples() {
        holds_with(&cassini(5), -1, -1);
        holds_with(&cassini(0), 1, 1);
        holds_with(&cassini(-3), -1, -1);
    }

    #[test]
    fn catalan_examples() {
        holds_with(&catalan(5, 2), 1, 1);
        holds_with(&catalan(7, 0), 0, 0);
        let c = catalan(5, 1);
        assert_eq!((c.lhs.clone(), c.rhs.clone()), (cassini(5).lhs, cassini(5).rhs));
    }

    #[test]
    fn vajda_examples() {
        holds_with(&vajda(5, 2), 2, 2);
        holds_with(&vajda(5, 0), 0, 0);
        holds_with(&vajda(6, 3), 6, 6);
    }

    #[test]
    fn tagiuri_examples() {
        holds_with(&tagiuri_odd(&seed(1, 3), 3, 2), -5, -5);
        assert!(tagiuri_odd(&seed(2, 5), 4, 1).holds);
        holds_with(&tagiuri_even(&seed(1, 3), 3, 1), 5, 5);
        assert!(tagiuri_even(&seed(3, 2), 2, 2).holds);
    }

    #[test]
    fn tagiuri_reduces_to_catalan_and_vajda() {
        let one = GeneralizedFibSeed::standard();
        for m in -30..=30 {
            for k in -10..=10 {
                let (t, c) = (tagiuri_odd(&one, m, k), catalan(m, k));
                assert_eq!((t.lhs, t.rhs), (c.lhs, c.rhs));
                let (t, v) = (tagiuri_even(&one, m, k), vajda(m, k));
                assert_eq!((t.lhs, t.rhs), (v.lhs, v.rhs));
            }
        }
    }

    #[test]
    fn catalan_k1_is_cassini() {
        for m in -100..=100 {
            let (c, k) = (cassini(m), catalan(m, 1));
            assert_eq!(c.lhs, k.lhs);
            assert_eq!(c.rhs, k.rhs);
        }
    }

    #[test]
    fn column_conjecture_examples() {
        // m = 0: F_2 = 1, F_3 = 2
        holds_with(&column_conjecture(0), 3, 3);
        // m = 1: F_3 = 2, F_4 = 3 -> 4 + 6 = 9 + 1
        holds_with(&column_conjecture(1), 10, 10);
        // m = 2: F_4 = 3, F_5 = 5 -> 9 + 15 = 25 - 1
        holds_with(&column_conjecture(2), 24, 24);
        assert!(column_conjecture(2).related[0].holds);
    }

    #[test]
    fn column_conjecture_tracks_cassini_shifted() {
        for m in -50..=50 {
            let c = column_conjecture(m);
            let reduced = &c.related[0];
            let shifted = cassini(m + 3);
            assert_eq!(c.holds, shifted.holds);
            assert_eq!(&reduced.lhs - &reduced.rhs, &shifted.lhs - &shifted.rhs);
        }
    }

    #[test]
    fn fixed_constants() {
        assert_eq!(fixed_constant(2).unwrap(), 1.into());
        assert_eq!(fixed_constant(9).unwrap(), 71.into());
        assert_eq!(fixed_constant(1).unwrap(), (-1).into());
        assert_eq!(fixed_constant_recurrence(0), (-1).into());
        assert!(fixed_constant(0).is_err());
    }

    #[test]
    fn row_sum_examples() {
        let r = row_sum_law(&seed(1, 2), 1).unwrap();
        holds_with(&r, 3, 3);
        assert!(r.note.is_some());
        let r = row_sum_law(&seed(1, 2), 2).unwrap();
        holds_with(&r, 6, 6);
        assert!(r.note.is_none());
        holds_with(&row_sum_law(&seed(1, 3), 3).unwrap(), 21, 21);
        assert!(row_sum_law(&seed(1, 3), 0).is_err());
    }

    #[test]
    fn row_sum_correction_alternates_with_column_constant() {
        for n in 2..=9u64 {
            let s = GeneralizedFibSeed::generator(n);
            let c = fixed_constant(n).unwrap();
            let mut previous: Option<ExactInt> = None;
            for j in (1..=99).step_by(2) {
                let corr = row_sum_correction(&s, j);
                assert_eq!(num_traits::Signed::abs(&corr), c);
                if let Some(p) = &previous {
                    assert_eq!(&corr, &-p.clone());
                }
                previous = Some(corr);
            }
        }
    }

    #[test]
    fn sum_of_squares_examples() {
        holds_with(&sum_of_squares(&GeneralizedFibSeed::standard(), 5).unwrap(), 40, 40);
        holds_with(&sum_of_squares(&seed(1, 3), 3).unwrap(), 26, 26);
        holds_with(&sum_of_squares(&GeneralizedFibSeed::standard(), 1).unwrap(), 1, 1);
        assert!(sum_of_squares(&seed(1, 3), 0).is_err());
    }

    #[test]
    fn telescoped_partial_sums_match_direct_sums() {
        // e_m = e_1 + G_2² + ⋯ + G_m², with e_m = G_mG_{m+1}
        for s in SeedSource::random(20).seeds() {
            let g = s.terms(1, 61);
            let mut e = &g[0] * &g[1];
            for m in 2..=60usize {
                e += &g[m - 1] * &g[m - 1];
                assert_eq!(e, &g[m - 1] * &g[m]);
                let direct = sum_of_squares(&s, m as i64).unwrap();
                assert_eq!(direct.lhs, &e - s.a() * s.b() + s.a() * s.a());
            }
        }
    }

    #[test]
    fn identity_names_roundtrip() {
        for kind in IdentityKind::SWEEPABLE {
            assert_eq!(kind.name().parse::<IdentityKind>().unwrap(), kind);
        }
        assert_eq!(
            "nosuch".parse::<IdentityKind>(),
            Err(Error::UnknownIdentity("nosuch".into()))
        );
        assert_eq!("tagiuri_odd".parse::<IdentityKind>().unwrap(), IdentityKind::TagiuriOdd);
    }

    #[test]
    fn index_range_parsing() {
        assert_eq!("-200..200".parse::<IndexRange>().unwrap(), IndexRange::new(-200, 200));
        assert_eq!("5".parse::<IndexRange>().unwrap(), IndexRange::new(5, 5));
        assert_eq!("1..=3".parse::<IndexRange>().unwrap(), IndexRange::new(1, 3));
        assert!("3..1".parse::<IndexRange>().is_err());
        assert!("a..b".parse::<IndexRange>().is_err());
    }

    #[test]
    fn random_seeds_are_reproducible() {
        let a = SeedSource::random(50).seeds();
        let b = SeedSource::random(50).seeds();
        assert_eq!(a, b);
        assert!(a.iter().all(|s| s.a().magnitude() <= &1_000_000u32.into()));
        let other = SeedSource::Random {
            count: 50,
            rng_seed: 7,
            bound: DEFAULT_SEED_BOUND,
        };
        assert_ne!(a, other.seeds());
    }

    #[test]
    fn sweep_examples() {
        let r = sweep(IdentityKind::Cassini, &SweepGrid::default_for(IdentityKind::Cassini)).unwrap();
        assert_eq!((r.cases, r.violations.len()), (401, 0));
        let r = sweep(
            IdentityKind::TagiuriOdd,
            &SweepGrid::default_for(IdentityKind::TagiuriOdd),
        )
        .unwrap();
        assert_eq!((r.cases, r.violations.len()), (100 * 41 * 11, 0));
        let grid = SweepGrid {
            j: Some(IndexRange::new(1, 99)),
            seeds: Some(SeedSource::List {
                seeds: vec![seed(1, 2)],
            }),
            ..SweepGrid::default()
        };
        let r = sweep(IdentityKind::RowSum, &grid).unwrap();
        assert_eq!((r.cases, r.violations.len()), (99, 0));
        assert!(r.notes[0].contains("|mu| = 1"));
    }

    #[test]
    fn sweep_reports_every_violation_in_grid_order() {
        // a Cassini variant with the wrong sign: all odd and even m fail
        let grid = SweepGrid {
            m: Some(IndexRange::new(-3, 3)),
            ..SweepGrid::default()
        };
        let points: Vec<i64> = grid.m.unwrap().iter().collect();
        let failures = collect_failures(points, |m| {
            let mut r = cassini(m);
            r.rhs = -r.rhs.clone();
            r.residual = &r.lhs - &r.rhs;
            r.holds = r.residual.is_zero();
            r
        });
        let ms: Vec<_> = failures.iter().map(|r| r.params.m.unwrap()).collect();
        assert_eq!(ms, vec![-3, -2, -1, 0, 1, 2, 3]);

        let report = SweepReport {
            identity: IdentityKind::Cassini,
            grid,
            cases: 7,
            violations: failures,
            notes: Vec::new(),
        };
        let csv_text = report.to_csv();
        let mut lines = csv_text.lines();
        assert_eq!(lines.next(), Some("identity,m,k,j,seed_a,seed_b,lhs,rhs,residual"));
        assert_eq!(lines.next(), Some("cassini,-3,,,,,-1,1,-2"));
        assert_eq!(csv_text.lines().count(), 8);
    }

    #[test]
    fn sweep_missing_parameter() {
        let err = sweep(IdentityKind::RowSum, &SweepGrid {
            seeds: None,
            j: Some(IndexRange::new(1, 3)),
            ..SweepGrid::default()
        });
        assert!(matches!(err, Err(Error::MissingParameter { .. })));
    }

    #[test]
    fn record_json_shape() {
        let r = tagiuri_odd(&seed(1, 3), 3, 2);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["identity"], "tagiuri-odd");
        assert_eq!(v["params"]["seed"]["b"], 3);
        assert_eq!(v["lhs"], -5);
        assert_eq!(v["holds"], true);
        let back: VerificationRecord = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
