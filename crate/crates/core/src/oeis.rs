//! Offline comparison of fiboquadratic columns against OEIS b-file snapshots.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int_json, ExactInt};
use crate::fiboquad::a_closed;

pub const OFFSET_SEARCH: std::ops::RangeInclusive<i64> = -5..=5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BFileEntry {
    pub index: i64,
    #[serde(with = "int_json")]
    pub value: ExactInt,
}

/// Parses `index value` lines; `#` comments and blank lines are skipped.
pub fn parse_bfile(text: &str) -> Result<Vec<BFileEntry>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let bad = || Error::Parse {
            what: "b-file line",
            input: line.to_string(),
        };
        let index = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let value = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        out.push(BFileEntry { index, value });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: i64,
    #[serde(with = "int_json")]
    pub expected: ExactInt,
    #[serde(with = "int_json")]
    pub found: ExactInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub n: u64,
    /// b-file index `i` is compared with row `i - offset`.
    pub offset: i64,
    pub entries: usize,
    pub matched_prefix: usize,
    pub first_mismatch: Option<Mismatch>,
}

pub fn compare(entries: &[BFileEntry], n: u64, offset: i64) -> MatchReport {
    let mut matched_prefix = 0;
    let mut first_mismatch = None;
    for e in entries {
        let ours = a_closed(e.index - offset, n);
        if ours != e.value {
            first_mismatch = Some(Mismatch {
                index: e.index,
                expected: e.value.clone(),
                found: ours,
            });
            break;
        }
        matched_prefix += 1;
    }
    MatchReport {
        n,
        offset,
        entries: entries.len(),
        matched_prefix,
        first_mismatch,
    }
}

/// Longest matching prefix over [`OFFSET_SEARCH`]; ties go to the smallest offset.
pub fn best_offset(entries: &[BFileEntry], n: u64) -> MatchReport {
    OFFSET_SEARCH
        .map(|o| compare(entries, n, o))
        .reduce(|best, r| if r.matched_prefix > best.matched_prefix { r } else { best })
        .expect("non-empty search range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(n: u64, shift: i64, len: i64) -> String {
        let mut s = String::from("# synthetic snapshot\n\n");
        for i in 0..len {
            s.push_str(&format!("{} {}\n", i, a_closed(i - shift, n)));
        }
        s
    }

    #[test]
    fn parse_skips_comments() {
        let e = parse_bfile("# c\n\n0 1\n1   5\n").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[1].value, ExactInt::from(5));
        assert!(parse_bfile("0 x\n").is_err());
        assert!(parse_bfile("0 1 2\n").is_err());
    }

    #[test]
    fn empty_file_matches_nothing() {
        let r = compare(&parse_bfile("").unwrap(), 1, 0);
        assert_eq!(r.matched_prefix, 0);
        assert_eq!(r.first_mismatch, None);
    }

    #[test]
    fn offset_is_recovered() {
        let e = parse_bfile(&synthetic(3, 2, 40)).unwrap();
        let r = best_offset(&e, 3);
        assert_eq!((r.offset, r.matched_prefix), (2, 40));
        let r = compare(&e, 3, 0);
        assert!(r.matched_prefix < 40);
        assert!(r.first_mismatch.is_some());
    }

    #[test]
    fn corrupted_entry_stops_prefix() {
        let mut e = parse_bfile(&synthetic(1, 0, 30)).unwrap();
        e[17].value += 1;
        let r = compare(&e, 1, 0);
        assert_eq!(r.matched_prefix, 17);
        assert_eq!(r.first_mismatch.unwrap().index, 17);
    }
}
