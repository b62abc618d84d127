//! Rithmomachia armies, the infinite table extension, and progression search.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::boethius::{canonical_class, RatioClass};
use crate::error::{Error, Result};
use crate::exact::{int_vec_json, rational_json, ExactInt, ExactRational};
use crate::fibcore::{fib, GeneralizedFibSeed};
use crate::fiboquad::{a_closed, b_coeff, multiplier_index};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn generators(self) -> [u64; 4] {
        match self {
            Color::White => [2, 4, 6, 8],
            Color::Black => [3, 5, 7, 9],
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::White => "white",
            Color::Black => "black",
        })
    }
}

/// `coeff·n + constant`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineFactor {
    pub coeff: i64,
    pub constant: i64,
}

impl AffineFactor {
    fn is_monomial(&self) -> bool {
        self.coeff == 0 || self.constant == 0
    }

    fn is_one(&self) -> bool {
        self.coeff == 0 && self.constant == 1
    }
}

impl fmt::Display for AffineFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n_term = match self.coeff {
            0 => String::new(),
            1 => "n".to_string(),
            c => format!("{c}n"),
        };
        match (n_term.is_empty(), self.constant) {
            (true, c) => write!(f, "{c}"),
            (false, 0) => f.write_str(&n_term),
            (false, c) if c < 0 => write!(f, "{n_term} - {}", -c),
            (false, c) => write!(f, "{n_term} + {c}"),
        }
    }
}

/// The two affine factors whose product is row `m` of the extended table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowLabel {
    pub first: AffineFactor,
    pub second: AffineFactor,
}

impl RowLabel {
    /// `((F_a, F_{a-1}), (F_b, F_{b-1}))` as plain coefficient pairs.
    pub fn pairs(&self) -> ((i64, i64), (i64, i64)) {
        (
            (self.first.coeff, self.first.constant),
            (self.second.coeff, self.second.constant),
        )
    }
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |x: &AffineFactor| {
            if x.is_monomial() {
                x.to_string()
            } else {
                format!("({x})")
            }
        };
        if self.first == self.second {
            return if self.first.is_one() {
                f.write_str("1")
            } else {
                write!(f, "{}^2", wrap(&self.first))
            };
        }
        match (self.first.is_one(), self.second.is_one()) {
            (true, _) => f.write_str(&self.second.to_string()),
            (_, true) => f.write_str(&self.first.to_string()),
            _ => write!(f, "{}{}", wrap(&self.first), wrap(&self.second)),
        }
    }
}

fn fib_i64(k: i64) -> i64 {
    // labels are only meaningful for small rows
    i64::try_from(fib(k)).expect("row label coefficient fits in i64")
}

/// Symbolic label of row `m`: `(F_h n + F_{h-1})²` for even `m = 2h`,
/// `(F_h n + F_{h-1})(F_{h+1} n + F_h)` for odd `m = 2h + 1`.
pub fn row_label(m: u32) -> RowLabel {
    let factor = |h: i64| AffineFactor {
        coeff: fib_i64(h),
        constant: fib_i64(h - 1),
    };
    let m = m as i64;
    if m % 2 == 0 {
        RowLabel {
            first: factor(m / 2),
            second: factor(m / 2),
        }
    } else {
        let h = (m - 1) / 2;
        RowLabel {
            first: factor(h),
            second: factor(h + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub m: u32,
    pub label: String,
    #[serde(with = "int_vec_json")]
    pub values: Vec<ExactInt>,
}

/// Rows `a_{m,n}` for consecutive `m`, one column per generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberTable {
    pub generators: Vec<u64>,
    pub rows: Vec<TableRow>,
}

impl NumberTable {
    fn build(m_range: std::ops::RangeInclusive<u32>, generators: &[u64], label: impl Fn(u32) -> String) -> Self {
        let rows = m_range
            .map(|m| TableRow {
                m,
                label: label(m),
                values: generators.iter().map(|&n| a_closed(m as i64, n)).collect(),
            })
            .collect();
        Self {
            generators: generators.to_vec(),
            rows,
        }
    }

    pub fn column(&self, n: u64) -> Option<Vec<ExactInt>> {
        let idx = self.generators.iter().position(|&g| g == n)?;
        Some(self.rows.iter().map(|r| r.values[idx].clone()).collect())
    }

    pub fn values(&self) -> impl Iterator<Item = &ExactInt> {
        self.rows.iter().flat_map(|r| r.values.iter())
    }

    pub fn entry(&self, m: u32, n: u64) -> Option<&ExactInt> {
        let col = self.generators.iter().position(|&g| g == n)?;
        let row = self.rows.iter().find(|r| r.m == m)?;
        row.values.get(col)
    }

    /// CSV with header `m,label,<generators…>`; integers unquoted.
    pub fn to_csv(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|n| n.to_string()).collect();
        let mut header = vec!["m", "label"];
        header.extend(gens.iter().map(String::as_str));
        crate::exact::csv_string(
            &header,
            self.rows.iter().map(|row| {
                let mut rec = vec![row.m.to_string(), row.label.clone()];
                rec.extend(row.values.iter().map(|v| v.to_string()));
                rec
            }),
        )
    }
}

pub const ARMY_ROW_NAMES: [&str; 6] = ["p", "q", "r", "s", "t", "u"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardTable {
    pub color: Color,
    pub table: NumberTable,
}

/// One army: rows p..u (`m = 1..=6`) for the color's four generators.
pub fn generate_army(color: Color) -> BoardTable {
    let table = NumberTable::build(1..=6, &color.generators(), |m| {
        format!("{}={}", ARMY_ROW_NAMES[m as usize - 1], row_label(m))
    });
    BoardTable { color, table }
}

/// Both armies' 48 values, white first.
pub fn army_values() -> Vec<ExactInt> {
    [Color::White, Color::Black]
        .into_iter()
        .flat_map(|c| generate_army(c).table.values().cloned().collect::<Vec<_>>())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedTable {
    pub m_max: u32,
    pub labels: Vec<RowLabel>,
    pub table: NumberTable,
}

pub const DEFAULT_GENERATORS: [u64; 8] = [2, 3, 4, 5, 6, 7, 8, 9];

/// Rows `0 ..= m_max` of the infinite extension.
pub fn generate_extended(m_max: u32, generators: &[u64]) -> Result<ExtendedTable> {
    if generators.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(&bad) = generators.iter().find(|&&n| n == 0) {
        return Err(Error::TooSmall {
            what: "generator n",
            min: 1,
            got: bad as i64,
        });
    }
    let table = NumberTable::build(0..=m_max, generators, |m| row_label(m).to_string());
    Ok(ExtendedTable {
        m_max,
        labels: (0..=m_max).map(row_label).collect(),
        table,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureMismatch {
    pub n: u64,
    pub from_m: u32,
    pub to_m: u32,
    #[serde(with = "rational_json")]
    pub ratio: ExactRational,
    pub expected: RatioClass,
    pub found: RatioClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<StructureMismatch>,
}

impl StructureReport {
    pub fn conforms(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// The class the construction assigns to the step from row `m − 1` to `m`:
/// the multiplier `b_k = G_{k+2}/G_{k+1}` of the seed `(1, n)`, `k = idx(m)`.
fn expected_step(m: u32, n: u64) -> RatioClass {
    let k = multiplier_index(m);
    let seed = GeneralizedFibSeed::generator(n);
    canonical_class(&seed.term(k + 2), &seed.term(k + 1))
        .expect("terms are positive for n >= 1, k >= 0")
}

/// Checks every adjacent row pair of `table` against the construction:
/// the row ratio must equal `b_coeff` exactly and classify the same way as
/// the Fibonacci multiplier it comes from.
pub fn verify_boethian_structure(table: &NumberTable) -> StructureReport {
    let mut pairs_checked = 0;
    let mut mismatches = Vec::new();
    for pair in table.rows.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        for (col, &n) in table.generators.iter().enumerate() {
            pairs_checked += 1;
            let (from, to) = (&lower.values[col], &upper.values[col]);
            let expected = expected_step(upper.m, n);
            let mismatch = |ratio, found| StructureMismatch {
                n,
                from_m: lower.m,
                to_m: upper.m,
                ratio,
                expected: expected.clone(),
                found,
            };
            if from.is_zero() || !from.is_positive() || !to.is_positive() {
                mismatches.push(mismatch(
                    ExactRational::zero(),
                    RatioClass::Other { sub_ratio: false },
                ));
                continue;
            }
            let ratio = ExactRational::new(to.clone(), from.clone());
            let found = canonical_class(to, from).expect("positive");
            let multiplier_ok = b_coeff(multiplier_index(upper.m), n).is_ok_and(|b| b == ratio);
            if !multiplier_ok || found != expected {
                mismatches.push(mismatch(ratio, found));
            }
        }
    }
    StructureReport {
        pairs_checked,
        mismatches,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProgressionKind {
    Arithmetic,
    Geometric,
    Harmonic,
    /// Four terms with `a : b :: c : d`.
    GeometricProportion,
}

impl ProgressionKind {
    pub const ALL: [ProgressionKind; 4] = [
        Self::Arithmetic,
        Self::Geometric,
        Self::Harmonic,
        Self::GeometricProportion,
    ];

    pub fn arity(self) -> usize {
        match self {
            Self::GeometricProportion => 4,
            _ => 3,
        }
    }
}

impl FromStr for ProgressionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "arithmetic" => Ok(Self::Arithmetic),
            "geometric" => Ok(Self::Geometric),
            "harmonic" => Ok(Self::Harmonic),
            "geometric_proportion" | "proportion" => Ok(Self::GeometricProportion),
            _ => Err(Error::Parse {
                what: "progression kind",
                input: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for ProgressionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Arithmetic => "arithmetic",
            Self::Geometric => "geometric",
            Self::Harmonic => "harmonic",
            Self::GeometricProportion => "geometric_proportion",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arity {
    Three,
    Four,
    Both,
}

impl Arity {
    fn admits(self, n: usize) -> bool {
        matches!((self, n), (Arity::Both, _) | (Arity::Three, 3) | (Arity::Four, 4))
    }
}

impl FromStr for Arity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "3" | "three" => Ok(Self::Three),
            "4" | "four" => Ok(Self::Four),
            "both" => Ok(Self::Both),
            _ => Err(Error::Parse {
                what: "arity",
                input: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub kind: ProgressionKind,
    #[serde(with = "int_vec_json")]
    pub terms: Vec<ExactInt>,
    /// The defining equality with the terms substituted.
    pub witness: String,
}

/// Exact membership test for one tuple (ascending order expected).
pub fn is_progression(kind: ProgressionKind, terms: &[ExactInt]) -> bool {
    match (kind, terms) {
        (ProgressionKind::Arithmetic, [a, b, c]) => b - a == c - b,
        (ProgressionKind::Geometric, [a, b, c]) => b * b == a * c,
        (ProgressionKind::Harmonic, [a, b, c]) => b * (a + c) == a * c * 2u32,
        (ProgressionKind::GeometricProportion, [a, b, c, d]) => a * d == b * c,
        _ => false,
    }
}

fn witness(kind: ProgressionKind, t: &[ExactInt]) -> String {
    match kind {
        ProgressionKind::Arithmetic => {
            format!("{} - {} = {} - {} = {}", t[1], t[0], t[2], t[1], &t[1] - &t[0])
        }
        ProgressionKind::Geometric => {
            format!("{}^2 = {}·{} = {}", t[1], t[0], t[2], &t[0] * &t[2])
        }
        ProgressionKind::Harmonic => format!(
            "{}·({} + {}) = 2·{}·{} = {}",
            t[1],
            t[0],
            t[2],
            t[0],
            t[2],
            &t[0] * &t[2] * 2u32
        ),
        ProgressionKind::GeometricProportion => format!(
            "{}·{} = {}·{} = {}",
            t[0],
            t[3],
            t[1],
            t[2],
            &t[0] * &t[3]
        ),
    }
}

fn normalized(values: &[ExactInt]) -> Result<Vec<ExactInt>> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(bad) = values.iter().find(|v| !v.is_positive()) {
        return Err(Error::NonPositive(bad.to_string()));
    }
    let mut v = values.to_vec();
    v.sort();
    v.dedup();
    Ok(v)
}

/// Every strictly ascending tuple of distinct `values` in a requested
/// progression, ordered by terms, then kind.
pub fn find_progressions(
    values: &[ExactInt],
    kinds: &[ProgressionKind],
    arity: Arity,
) -> Result<Vec<Progression>> {
    let v = normalized(values)?;
    let kinds: Vec<_> = kinds.iter().copied().filter(|k| arity.admits(k.arity())).collect();
    let three: Vec<_> = kinds.iter().copied().filter(|k| k.arity() == 3).collect();
    let four = kinds.contains(&ProgressionKind::GeometricProportion);
    let mut out = Vec::new();
    let len = v.len();
    for i in 0..len {
        for j in i + 1..len {
            for k in j + 1..len {
                let t = [v[i].clone(), v[j].clone(), v[k].clone()];
                for &kind in &three {
                    if is_progression(kind, &t) {
                        out.push(Progression {
                            kind,
                            witness: witness(kind, &t),
                            terms: t.to_vec(),
                        });
                    }
                }
                if four {
                    for l in k + 1..len {
                        let t = [v[i].clone(), v[j].clone(), v[k].clone(), v[l].clone()];
                        let kind = ProgressionKind::GeometricProportion;
                        if is_progression(kind, &t) {
                            out.push(Progression {
                                kind,
                                witness: witness(kind, &t),
                                terms: t.to_vec(),
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.terms.cmp(&b.terms).then(a.kind.cmp(&b.kind)));
    Ok(out)
}

/// Progressions of one kind over a value set, sorted and de-duplicated.
/// An empty or singleton set yields an empty table.
pub fn victory_table(values: &[ExactInt], kind: ProgressionKind) -> Result<Vec<Progression>> {
    if values.len() < 2 {
        if let Some(bad) = values.iter().find(|v| !v.is_positive()) {
            return Err(Error::NonPositive(bad.to_string()));
        }
        return Ok(Vec::new());
    }
    find_progressions(values, &[kind], Arity::Both)
}
