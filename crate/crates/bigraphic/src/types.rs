//! Domain types shared by every check: interval sequences, interval pairs,
//! and concrete degree pairs, all over exact 64-bit integers.
//!
//! Values are capped so that any sum the checks form stays far away from
//! `i64` overflow: entries at most [`MAX_VALUE`], lengths at most [`MAX_LEN`].
//! The caps are enforced at construction time, never silently.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest admissible degree value (1e9).
pub const MAX_VALUE: i64 = 1_000_000_000;

/// Largest admissible sequence length (1e6).
pub const MAX_LEN: usize = 1_000_000;

/// A constraint violation raised while constructing a domain value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainError {
    /// Sequences must contain at least one slot.
    Empty,
    /// Degree values are nonnegative.
    Negative { index: usize, value: i64 },
    /// Interval lower bound exceeds its upper bound.
    Inverted { index: usize, lo: i64, hi: i64 },
    /// Value exceeds [`MAX_VALUE`].
    TooLarge { index: usize, value: i64 },
    /// Sequence longer than [`MAX_LEN`].
    TooLong { len: usize },
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainError::Empty => write!(f, "sequence is empty"),
            DomainError::Negative { index, value } => {
                write!(f, "negative value {value} at index {index}")
            }
            DomainError::Inverted { index, lo, hi } => {
                write!(f, "interval [{lo},{hi}] at index {index} has lo > hi")
            }
            DomainError::TooLarge { index, value } => {
                write!(f, "value {value} at index {index} exceeds cap {MAX_VALUE}")
            }
            DomainError::TooLong { len } => {
                write!(f, "sequence length {len} exceeds cap {MAX_LEN}")
            }
        }
    }
}

impl std::error::Error for DomainError {}

fn check_value(index: usize, value: i64) -> Result<(), DomainError> {
    if value < 0 {
        return Err(DomainError::Negative { index, value });
    }
    if value > MAX_VALUE {
        return Err(DomainError::TooLarge { index, value });
    }
    Ok(())
}

fn check_len(len: usize) -> Result<(), DomainError> {
    if len == 0 {
        return Err(DomainError::Empty);
    }
    if len > MAX_LEN {
        return Err(DomainError::TooLong { len });
    }
    Ok(())
}

/// One degree interval `[lo, hi]` per vertex slot, in caller order.
///
/// Serialized as a JSON array of `[lo, hi]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(i64, i64)>", into = "Vec<(i64, i64)>")]
pub struct IntervalSequence {
    items: Vec<(i64, i64)>,
}

impl IntervalSequence {
    /// Builds a sequence from `(lo, hi)` pairs, validating every invariant.
    pub fn new(items: Vec<(i64, i64)>) -> Result<Self, DomainError> {
        check_len(items.len())?;
        for (index, &(lo, hi)) in items.iter().enumerate() {
            check_value(index, lo)?;
            check_value(index, hi)?;
            if lo > hi {
                return Err(DomainError::Inverted { index, lo, hi });
            }
        }
        Ok(IntervalSequence { items })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[(i64, i64)] {
        &self.items
    }

    /// Lower bounds, in input order.
    pub fn lows(&self) -> Vec<i64> {
        self.items.iter().map(|&(lo, _)| lo).collect()
    }

    /// Upper bounds, in input order.
    pub fn highs(&self) -> Vec<i64> {
        self.items.iter().map(|&(_, hi)| hi).collect()
    }

    pub fn low_sum(&self) -> i64 {
        self.items.iter().map(|&(lo, _)| lo).sum()
    }

    pub fn high_sum(&self) -> i64 {
        self.items.iter().map(|&(_, hi)| hi).sum()
    }

    /// True when every interval is a single point (`lo == hi`).
    pub fn is_degenerate(&self) -> bool {
        self.items.iter().all(|&(lo, hi)| lo == hi)
    }

    /// Checks `lo_i <= value_i <= hi_i` for all slots.
    pub fn contains(&self, values: &[i64]) -> bool {
        values.len() == self.items.len()
            && self
                .items
                .iter()
                .zip(values)
                .all(|(&(lo, hi), &v)| lo <= v && v <= hi)
    }
}

impl TryFrom<Vec<(i64, i64)>> for IntervalSequence {
    type Error = DomainError;

    fn try_from(items: Vec<(i64, i64)>) -> Result<Self, Self::Error> {
        IntervalSequence::new(items)
    }
}

impl From<IntervalSequence> for Vec<(i64, i64)> {
    fn from(seq: IntervalSequence) -> Self {
        seq.items
    }
}

/// The two interval sequences `(L1; L2)`: `L1` covers the X side (length m),
/// `L2` the Y side (length n). Stored in caller order; every check sorts
/// internally and reports the permutation it used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalPair {
    #[serde(rename = "L1")]
    pub l1: IntervalSequence,
    #[serde(rename = "L2")]
    pub l2: IntervalSequence,
}

impl IntervalPair {
    pub fn new(l1: IntervalSequence, l2: IntervalSequence) -> Self {
        IntervalPair { l1, l2 }
    }

    /// Convenience constructor from raw `(lo, hi)` lists.
    pub fn from_bounds(l1: Vec<(i64, i64)>, l2: Vec<(i64, i64)>) -> Result<Self, DomainError> {
        Ok(IntervalPair {
            l1: IntervalSequence::new(l1)?,
            l2: IntervalSequence::new(l2)?,
        })
    }

    /// Number of X-side slots (m).
    pub fn m(&self) -> usize {
        self.l1.len()
    }

    /// Number of Y-side slots (n).
    pub fn n(&self) -> usize {
        self.l2.len()
    }
}

#[derive(Serialize, Deserialize)]
struct DegreePairRaw {
    #[serde(rename = "P")]
    p: Vec<i64>,
    #[serde(rename = "Q")]
    q: Vec<i64>,
}

/// A concrete pair `(P; Q)` of nonnegative degree sequences, in caller order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DegreePairRaw", into = "DegreePairRaw")]
pub struct DegreePair {
    p: Vec<i64>,
    q: Vec<i64>,
}

impl DegreePair {
    /// Builds a pair, validating nonnegativity and the value/length caps.
    pub fn new(p: Vec<i64>, q: Vec<i64>) -> Result<Self, DomainError> {
        check_len(p.len())?;
        check_len(q.len())?;
        for (index, &v) in p.iter().enumerate() {
            check_value(index, v)?;
        }
        for (index, &v) in q.iter().enumerate() {
            check_value(index, v)?;
        }
        Ok(DegreePair { p, q })
    }

    /// Constructor for values already known to satisfy the invariants
    /// (entries produced inside interval bounds that were validated on entry).
    pub(crate) fn from_checked(p: Vec<i64>, q: Vec<i64>) -> Self {
        debug_assert!(!p.is_empty() && !q.is_empty());
        debug_assert!(p.iter().chain(&q).all(|&v| (0..=MAX_VALUE).contains(&v)));
        DegreePair { p, q }
    }

    pub fn p(&self) -> &[i64] {
        &self.p
    }

    pub fn q(&self) -> &[i64] {
        &self.q
    }

    pub fn p_sum(&self) -> i64 {
        self.p.iter().sum()
    }

    pub fn q_sum(&self) -> i64 {
        self.q.iter().sum()
    }

    /// True when `P` lies in `L1`, `Q` lies in `L2`, and the sums agree —
    /// i.e. the pair belongs to the interval pair's quantifier domain.
    pub fn is_valid_for(&self, ip: &IntervalPair) -> bool {
        ip.l1.contains(&self.p) && ip.l2.contains(&self.q) && self.p_sum() == self.q_sum()
    }
}

impl TryFrom<DegreePairRaw> for DegreePair {
    type Error = DomainError;

    fn try_from(raw: DegreePairRaw) -> Result<Self, Self::Error> {
        DegreePair::new(raw.p, raw.q)
    }
}

impl From<DegreePair> for DegreePairRaw {
    fn from(pair: DegreePair) -> Self {
        DegreePairRaw {
            p: pair.p,
            q: pair.q,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_sequence_rejects_inverted() {
        let err = IntervalSequence::new(vec![(3, 2)]).unwrap_err();
        assert_eq!(
            err,
            DomainError::Inverted {
                index: 0,
                lo: 3,
                hi: 2
            }
        );
    }

    #[test]
    fn interval_sequence_rejects_empty() {
        assert_eq!(
            IntervalSequence::new(vec![]).unwrap_err(),
            DomainError::Empty
        );
    }

    #[test]
    fn interval_sequence_rejects_negative_and_oversize() {
        assert!(matches!(
            IntervalSequence::new(vec![(-1, 2)]).unwrap_err(),
            DomainError::Negative { index: 0, .. }
        ));
        assert!(matches!(
            IntervalSequence::new(vec![(0, MAX_VALUE + 1)]).unwrap_err(),
            DomainError::TooLarge { index: 0, .. }
        ));
    }

    #[test]
    fn degree_pair_rejects_negative() {
        assert!(matches!(
            DegreePair::new(vec![1, -2], vec![0]).unwrap_err(),
            DomainError::Negative {
                index: 1,
                value: -2
            }
        ));
    }

    #[test]
    fn validity_checks_bounds_and_sum() {
        let ip = IntervalPair::from_bounds(vec![(1, 3), (2, 3)], vec![(1, 2), (0, 2)]).unwrap();
        let inside = DegreePair::new(vec![1, 3], vec![2, 2]).unwrap();
        assert!(inside.is_valid_for(&ip));
        // right bounds, unequal sums
        let unequal = DegreePair::new(vec![1, 2], vec![2, 2]).unwrap();
        assert!(!unequal.is_valid_for(&ip));
        // out of bounds
        let outside = DegreePair::new(vec![0, 3], vec![1, 2]).unwrap();
        assert!(!outside.is_valid_for(&ip));
    }

    #[test]
    fn serde_shapes_round_trip() {
        let ip = IntervalPair::from_bounds(vec![(2, 3), (1, 2)], vec![(1, 2), (0, 1)]).unwrap();
        let json = serde_json::to_string(&ip).unwrap();
        assert_eq!(json, r#"{"L1":[[2,3],[1,2]],"L2":[[1,2],[0,1]]}"#);
        let back: IntervalPair = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ip);

        let pair = DegreePair::new(vec![1, 3], vec![2, 2]).unwrap();
        let json = serde_json::to_string(&pair).unwrap();
        assert_eq!(json, r#"{"P":[1,3],"Q":[2,2]}"#);
        let back: DegreePair = serde_json::from_str(&json).unwrap();
        assert_eq!(back, pair);
    }

    #[test]
    fn serde_rejects_invalid_payloads() {
        assert!(serde_json::from_str::<IntervalSequence>("[[3,2]]").is_err());
        assert!(serde_json::from_str::<DegreePair>(r#"{"P":[-1],"Q":[0]}"#).is_err());
    }
}
