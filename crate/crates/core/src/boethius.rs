//! Nicomachus/Boethius ratio classes.
//!
//! A ratio `p : m` of positive integers with `p > m` is written
//! `p/m = r + k/n` in lowest terms and falls into exactly one of six
//! classes. Ratios below one are reported as [`RatioClass::Other`].

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int_json, rational_json, ExactInt, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RatioClass {
    Equal,
    /// `p = r·m`.
    Multiple {
        #[serde(with = "int_json")]
        r: ExactInt,
    },
    /// `p = m(1 + 1/n)`.
    Superparticular {
        #[serde(with = "int_json")]
        n: ExactInt,
    },
    /// `p = m(1 + k/n)`.
    Superpartient {
        #[serde(with = "int_json")]
        k: ExactInt,
        #[serde(with = "int_json")]
        n: ExactInt,
    },
    /// `p = m(r + 1/n)`.
    MultipleSuperparticular {
        #[serde(with = "int_json")]
        r: ExactInt,
        #[serde(with = "int_json")]
        n: ExactInt,
    },
    /// `p = m(r + k/n)`.
    MultipleSuperpartient {
        #[serde(with = "int_json")]
        r: ExactInt,
        #[serde(with = "int_json")]
        k: ExactInt,
        #[serde(with = "int_json")]
        n: ExactInt,
    },
    /// Outside the taxonomy; `sub_ratio` marks `p < m`.
    Other { sub_ratio: bool },
}

impl std::fmt::Display for RatioClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = self.kind_name();
        match self {
            Self::Equal => f.write_str(name),
            Self::Multiple { r } => write!(f, "{name} r={r}"),
            Self::Superparticular { n } => write!(f, "{name} n={n}"),
            Self::Superpartient { k, n } => write!(f, "{name} k={k} n={n}"),
            Self::MultipleSuperparticular { r, n } => write!(f, "{name} r={r} n={n}"),
            Self::MultipleSuperpartient { r, k, n } => write!(f, "{name} r={r} k={k} n={n}"),
            Self::Other { sub_ratio: true } => write!(f, "{name} (p < m)"),
            Self::Other { sub_ratio: false } => f.write_str(name),
        }
    }
}

impl RatioClass {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Equal => "equal",
            Self::Multiple { .. } => "multiple",
            Self::Superparticular { .. } => "superparticular",
            Self::Superpartient { .. } => "superpartient",
            Self::MultipleSuperparticular { .. } => "multiple_superparticular",
            Self::MultipleSuperpartient { .. } => "multiple_superpartient",
            Self::Other { .. } => "other",
        }
    }

    /// Builds the class for `r + k/n` (`0 ≤ k < n`, `r ≥ 1`).
    fn from_parts(r: ExactInt, k: ExactInt, n: ExactInt) -> Self {
        let one = ExactInt::one();
        match (r == one, k.is_zero(), k == one) {
            (true, true, _) => Self::Equal,
            (false, true, _) => Self::Multiple { r },
            (true, false, true) => Self::Superparticular { n },
            (true, false, false) => Self::Superpartient { k, n },
            (false, false, true) => Self::MultipleSuperparticular { r, n },
            (false, false, false) => Self::MultipleSuperpartient { r, k, n },
        }
    }

    /// The multiplier `p/m` this class asserts.
    pub fn ratio(&self) -> Option<ExactRational> {
        let frac = |k: &ExactInt, n: &ExactInt| ExactRational::new(k.clone(), n.clone());
        let one = ExactRational::one();
        Some(match self {
            Self::Equal => one,
            Self::Multiple { r } => ExactRational::from_integer(r.clone()),
            Self::Superparticular { n } => one + frac(&ExactInt::one(), n),
            Self::Superpartient { k, n } => one + frac(k, n),
            Self::MultipleSuperparticular { r, n } => {
                ExactRational::from_integer(r.clone()) + frac(&ExactInt::one(), n)
            }
            Self::MultipleSuperpartient { r, k, n } => {
                ExactRational::from_integer(r.clone()) + frac(k, n)
            }
            Self::Other { .. } => return None,
        })
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedClass(msg));
        let two = ExactInt::from(2);
        let three = ExactInt::from(3);
        match self {
            Self::Multiple { r } if r < &two => bad(format!("multiple needs r >= 2, got {r}")),
            Self::Superparticular { n } | Self::MultipleSuperparticular { n, .. } if n < &two => {
                bad(format!("superparticular needs n >= 2, got {n}"))
            }
            Self::Superpartient { k, n } | Self::MultipleSuperpartient { k, n, .. }
                if n < &three || k < &two || k >= n =>
            {
                bad(format!("superpartient needs n >= 3 and 2 <= k <= n-1, got k={k}, n={n}"))
            }
            Self::MultipleSuperparticular { r, .. } | Self::MultipleSuperpartient { r, .. }
                if r < &two =>
            {
                bad(format!("multiple variants need r >= 2, got {r}"))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    #[serde(with = "int_json")]
    pub p: ExactInt,
    #[serde(with = "int_json")]
    pub m: ExactInt,
    #[serde(with = "rational_json")]
    pub reduced_ratio: ExactRational,
    pub canonical: RatioClass,
    /// Every literal witness `p = m(r + k/n)` with `n` a proper divisor of
    /// `m` (`2 ≤ n < m`). `k/n` need not be in lowest terms here.
    pub all_representations: Vec<RatioClass>,
}

fn require_positive(p: &ExactInt, m: &ExactInt) -> Result<()> {
    for v in [p, m] {
        if !v.is_positive() {
            return Err(Error::NonPositive(v.to_string()));
        }
    }
    Ok(())
}

fn canonical_of(ratio: &ExactRational) -> RatioClass {
    if ratio < &ExactRational::one() {
        return RatioClass::Other { sub_ratio: true };
    }
    let (r, k) = ratio.numer().div_rem(ratio.denom());
    RatioClass::from_parts(r, k, ratio.denom().clone())
}

/// The lowest-terms class of `p : m` alone, without divisor witnesses.
pub fn canonical_class(p: &ExactInt, m: &ExactInt) -> Result<RatioClass> {
    require_positive(p, m)?;
    Ok(canonical_of(&ExactRational::new(p.clone(), m.clone())))
}

pub fn classify(p: &ExactInt, m: &ExactInt) -> Result<ClassificationResult> {
    require_positive(p, m)?;
    let reduced_ratio = ExactRational::new(p.clone(), m.clone());
    let canonical = canonical_of(&reduced_ratio);
    let all_representations = if p > m {
        divisor_witnesses(p, m)
    } else {
        Vec::new()
    };
    Ok(ClassificationResult {
        p: p.clone(),
        m: m.clone(),
        reduced_ratio,
        canonical,
        all_representations,
    })
}

fn divisor_witnesses(p: &ExactInt, m: &ExactInt) -> Vec<RatioClass> {
    let mut out = Vec::new();
    for n in proper_divisors(m) {
        // p = m(r + k/n)  <=>  p·n / m = r·n + k
        let (q, rem) = (p * &n).div_rem(m);
        if !rem.is_zero() {
            continue;
        }
        let (r, k) = q.div_rem(&n);
        if k.is_zero() || r.is_zero() {
            continue;
        }
        out.push(RatioClass::from_parts(r, k, n));
    }
    out
}

/// Divisors `d` of `m` with `2 ≤ d < m`, ascending.
fn proper_divisors(m: &ExactInt) -> Vec<ExactInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    if let Some(mu) = m.to_u64() {
        let mut d = 2u64;
        while d * d <= mu {
            if mu % d == 0 {
                small.push(ExactInt::from(d));
                let co = mu / d;
                if co != d && co != mu {
                    large.push(ExactInt::from(co));
                }
            }
            d += 1;
        }
    }
    // TODO: divisor enumeration for m beyond u64 needs a factorization routine
    small.extend(large.into_iter().rev());
    small
}

/// Evaluates the defining equation of `claimed` for `(p, m)`.
pub fn relation_holds(p: &ExactInt, m: &ExactInt, claimed: &RatioClass) -> Result<bool> {
    require_positive(p, m)?;
    claimed.validate()?;
    Ok(match claimed {
        RatioClass::Other { sub_ratio: true } => p < m,
        RatioClass::Other { sub_ratio: false } => {
            return Err(Error::MalformedClass("other without sub_ratio".into()))
        }
        RatioClass::Equal => p == m,
        RatioClass::Multiple { r } => p == &(m * r),
        RatioClass::Superparticular { n } => p * n == m * (n + 1u32),
        RatioClass::Superpartient { k, n } => p * n == m * (n + k),
        RatioClass::MultipleSuperparticular { r, n } => p * n == m * (r * n + 1u32),
        RatioClass::MultipleSuperpartient { r, k, n } => p * n == m * (r * n + k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn i(v: i64) -> ExactInt {
        ExactInt::from(v)
    }

    fn canon(p: i64, m: i64) -> RatioClass {
        classify(&i(p), &i(m)).unwrap().canonical
    }

    #[test]
    fn table_examples() {
        assert_eq!(canon(6, 4), RatioClass::Superparticular { n: i(2) });
        assert_eq!(canon(15, 9), RatioClass::Superpartient { k: i(2), n: i(3) });
        assert_eq!(canon(4, 2), RatioClass::Multiple { r: i(2) });
        assert_eq!(canon(7, 7), RatioClass::Equal);
        assert_eq!(canon(3, 7), RatioClass::Other { sub_ratio: true });
        assert_eq!(
            canon(9, 4),
            RatioClass::MultipleSuperparticular { r: i(2), n: i(4) }
        );
        assert_eq!(
            canon(11, 3),
            RatioClass::MultipleSuperpartient { r: i(3), k: i(2), n: i(3) }
        );
        assert_eq!(canon(15, 9).to_string(), "superpartient k=2 n=3");
        for (p, m) in [(15, 9), (3, 7), (7, 7), (11, 3)] {
            assert_eq!(canonical_class(&i(p), &i(m)).unwrap(), canon(p, m));
        }
        assert_eq!(canon(11, 3).to_string(), "multiple_superpartient r=3 k=2 n=3");
    }

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(classify(&i(0), &i(3)), Err(Error::NonPositive(_))));
        assert!(matches!(classify(&i(3), &i(-1)), Err(Error::NonPositive(_))));
    }

    #[test]
    fn relation_examples() {
        let msp = RatioClass::MultipleSuperparticular { r: i(2), n: i(4) };
        assert!(relation_holds(&i(9), &i(4), &msp).unwrap());
        let sp = RatioClass::Superparticular { n: i(2) };
        assert!(relation_holds(&i(6), &i(4), &sp).unwrap());
        assert!(!relation_holds(&i(6), &i(4), &RatioClass::Multiple { r: i(2) }).unwrap());
    }

    #[test]
    fn malformed_claims_are_rejected() {
        let bad = [
            RatioClass::Multiple { r: i(1) },
            RatioClass::Superparticular { n: i(1) },
            RatioClass::Superpartient { k: i(1), n: i(3) },
            RatioClass::Superpartient { k: i(3), n: i(3) },
            RatioClass::MultipleSuperparticular { r: i(1), n: i(3) },
            RatioClass::Other { sub_ratio: false },
        ];
        for c in bad {
            assert!(
                matches!(relation_holds(&i(6), &i(4), &c), Err(Error::MalformedClass(_))),
                "{c:?}"
            );
        }
    }

    #[test]
    fn literal_divisor_witnesses() {
        // 15 = 9(1 + 2/3) with 3 a proper divisor of 9
        let r = classify(&i(15), &i(9)).unwrap();
        assert_eq!(
            r.all_representations,
            vec![RatioClass::Superpartient { k: i(2), n: i(3) }]
        );
        // 9 = 4(2 + 1/4) needs n = 4, which is not a proper divisor of 4
        let r = classify(&i(9), &i(4)).unwrap();
        assert!(r.all_representations.is_empty());
        // 12 = 8(1 + 1/2) = 8(1 + 2/4): the literal reading accepts both
        let r = classify(&i(12), &i(8)).unwrap();
        assert_eq!(
            r.all_representations,
            vec![
                RatioClass::Superparticular { n: i(2) },
                RatioClass::Superpartient { k: i(2), n: i(4) },
            ]
        );
        for w in &r.all_representations {
            assert!(relation_holds(&i(12), &i(8), w).unwrap());
        }
    }

    #[test]
    fn canonical_classes_partition_ratios_above_one() {
        for p in 1..=120i64 {
            for m in 1..p {
                let c = canon(p, m);
                assert!(!matches!(c, RatioClass::Other { .. } | RatioClass::Equal));
                assert_eq!(c.ratio().unwrap(), ExactRational::new(i(p), i(m)));
            }
        }
    }

    #[test]
    fn classification_serializes_with_kind_tag() {
        let v = serde_json::to_value(classify(&i(15), &i(9)).unwrap()).unwrap();
        assert_eq!(v["canonical"]["kind"], "superpartient");
        assert_eq!(v["canonical"]["k"], 2);
        assert_eq!(v["reduced_ratio"], "5/3");
    }

    proptest! {
        #[test]
        fn canonical_round_trip(p in 1i64..5000, m in 1i64..5000) {
            let r = classify(&i(p), &i(m)).unwrap();
            prop_assert!(relation_holds(&i(p), &i(m), &r.canonical).unwrap());
            for w in &r.all_representations {
                prop_assert!(relation_holds(&i(p), &i(m), w).unwrap());
            }
        }
    }
}
