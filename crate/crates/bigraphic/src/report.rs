//! Check reports: verdicts, violated inequalities, and the permutations the
//! checks used when they sorted their inputs internally.

use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Outcome of a dominance-style check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
}

/// The inequality family a violation belongs to. The serialized tags are part
/// of the wire format: `"(1)"` through `"(5)"`, `"T1.2-first"`,
/// `"T1.2-second"`, and `"sum-equality"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Gale-Ryser dominance on a concrete degree pair.
    Dominance,
    /// Sufficient condition, X-side uppers against Y-side lower conjugates.
    SufficientX,
    /// Sufficient condition, Y-side uppers against X-side lower conjugates.
    SufficientY,
    /// Necessary condition: [`Family::SufficientX`] relaxed by the sum slack.
    NecessaryX,
    /// Necessary condition: [`Family::SufficientY`] relaxed by the sum slack.
    NecessaryY,
    /// Interval-bigraphic existence, Y-side lowers against X-side uppers.
    ExistenceFirst,
    /// Interval-bigraphic existence, X-side lowers against Y-side uppers.
    ExistenceSecond,
    /// Total degree sums of the two sides differ.
    SumEquality,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Dominance => "(1)",
            Family::SufficientX => "(2)",
            Family::SufficientY => "(3)",
            Family::NecessaryX => "(4)",
            Family::NecessaryY => "(5)",
            Family::ExistenceFirst => "T1.2-first",
            Family::ExistenceSecond => "T1.2-second",
            Family::SumEquality => "sum-equality",
        }
    }

    fn from_tag(tag: &str) -> Option<Family> {
        Some(match tag {
            "(1)" => Family::Dominance,
            "(2)" => Family::SufficientX,
            "(3)" => Family::SufficientY,
            "(4)" => Family::NecessaryX,
            "(5)" => Family::NecessaryY,
            "T1.2-first" => Family::ExistenceFirst,
            "T1.2-second" => Family::ExistenceSecond,
            "sum-equality" => Family::SumEquality,
            _ => return None,
        })
    }

    /// JSON key used for the prefix index of this family, matching the letter
    /// each inequality ranges over.
    fn index_key(self) -> Option<&'static str> {
        match self {
            Family::Dominance => Some("r"),
            Family::SufficientX | Family::NecessaryX => Some("k"),
            Family::SufficientY | Family::NecessaryY => Some("l"),
            Family::ExistenceFirst => Some("t"),
            Family::ExistenceSecond => Some("s"),
            Family::SumEquality => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let tag = String::deserialize(deserializer)?;
        Family::from_tag(&tag)
            .ok_or_else(|| de::Error::custom(format!("unknown inequality family {tag:?}")))
    }
}

/// One violated inequality: the prefix length where it failed and both sides
/// of the comparison. `lhs > rhs` always holds; for `sum-equality` the larger
/// sum is stored as `lhs` and `index` is 0 (there is no prefix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub family: Family,
    pub index: usize,
    pub lhs: i64,
    pub rhs: i64,
}

impl Violation {
    pub fn new(family: Family, index: usize, lhs: i64, rhs: i64) -> Self {
        debug_assert!(lhs > rhs, "violations must have lhs > rhs");
        Violation {
            family,
            index,
            lhs,
            rhs,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family.index_key() {
            Some(key) => write!(
                f,
                "{} at {}={}: {} > {}",
                self.family, key, self.index, self.lhs, self.rhs
            ),
            None => write!(f, "{}: {} != {}", self.family, self.lhs, self.rhs),
        }
    }
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let has_index = self.family.index_key().is_some();
        let mut s = serializer.serialize_struct("Violation", if has_index { 4 } else { 3 })?;
        s.serialize_field("family", &self.family)?;
        if let Some(key) = self.family.index_key() {
            s.serialize_field(key, &self.index)?;
        }
        s.serialize_field("lhs", &self.lhs)?;
        s.serialize_field("rhs", &self.rhs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Violation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ViolationVisitor;

        impl<'de> Visitor<'de> for ViolationVisitor {
            type Value = Violation;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a violation object")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Violation, A::Error> {
                let mut family: Option<Family> = None;
                let mut index: Option<usize> = None;
                let mut lhs: Option<i64> = None;
                let mut rhs: Option<i64> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "family" => family = Some(map.next_value()?),
                        "r" | "k" | "l" | "t" | "s" | "index" => index = Some(map.next_value()?),
                        "lhs" => lhs = Some(map.next_value()?),
                        "rhs" => rhs = Some(map.next_value()?),
                        other => {
                            return Err(de::Error::unknown_field(
                                other,
                                &["family", "r", "k", "l", "t", "s", "lhs", "rhs"],
                            ))
                        }
                    }
                }
                let family = family.ok_or_else(|| de::Error::missing_field("family"))?;
                let lhs = lhs.ok_or_else(|| de::Error::missing_field("lhs"))?;
                let rhs = rhs.ok_or_else(|| de::Error::missing_field("rhs"))?;
                let index = match family.index_key() {
                    Some(key) => index.ok_or_else(|| de::Error::missing_field(key))?,
                    None => 0,
                };
                Ok(Violation {
                    family,
                    index,
                    lhs,
                    rhs,
                })
            }
        }

        deserializer.deserialize_map(ViolationVisitor)
    }
}

/// Which input sequence a sort permutation refers to. Serialized with the
/// interval-pair bound names: `a`/`b` are the X-side lower/upper bounds,
/// `c`/`d` the Y-side ones, `P`/`Q` the concrete degree sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeqTag {
    P,
    Q,
    #[serde(rename = "a")]
    LowerX,
    #[serde(rename = "b")]
    UpperX,
    #[serde(rename = "c")]
    LowerY,
    #[serde(rename = "d")]
    UpperY,
}

/// A permutation a check applied internally: `perm[sorted_pos] = input_pos`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortPerm {
    pub seq: SeqTag,
    pub perm: Vec<usize>,
}

/// Result of a check: overall verdict, every violated inequality (all failing
/// prefixes, not just the first), and the sort permutations mapping the
/// violation indices (which live in sorted coordinates) back to input
/// positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    pub sort_permutations: Vec<SortPerm>,
}

impl CheckReport {
    /// Builds a report; the verdict is derived so that
    /// `Fails <=> !violations.is_empty()` holds by construction.
    pub fn new(violations: Vec<Violation>, sort_permutations: Vec<SortPerm>) -> Self {
        let verdict = if violations.is_empty() {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        CheckReport {
            verdict,
            violations,
            sort_permutations,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// Smallest prefix index among violations of the given family.
    pub fn first_violation(&self, family: Family) -> Option<&Violation> {
        self.violations.iter().find(|v| v.family == family)
    }
}
