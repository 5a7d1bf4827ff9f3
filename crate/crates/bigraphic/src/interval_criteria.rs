//! Interval-level criteria for an interval pair `(L1; L2)`: the existence
//! test, the sufficient and necessary forcibly-bigraphic conditions, the
//! exact characterization under matching sum hypotheses, and the constructive
//! procedure that turns a failed necessary condition into a concrete
//! non-bigraphic witness pair.
//!
//! Conventions: `a`/`b` are the X-side lower/upper bounds, `c`/`d` the Y-side
//! ones. Every check sorts only the sequence its prefix ranges over (the
//! conjugate min-sum side is order-free) and reports the permutation it used.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gale_ryser::is_bigraphic;
use crate::oracle::{enumerate_pairs, BudgetExceeded};
use crate::report::{CheckReport, Family, SeqTag, SortPerm, Violation};
use crate::sums::{min_sum_prefixes, sort_desc_with_perm};
use crate::types::{DegreePair, IntervalPair};

/// Evaluates one dominance family: prefix sums of `demand` (sorted
/// descending) against `sum_min(supply, k) + slack` for every prefix length
/// `k in 1..=demand.len()`. Returns all violations plus the sort permutation.
fn dominance_family(
    demand: &[i64],
    supply: &[i64],
    slack: i64,
    family: Family,
) -> (Vec<Violation>, Vec<usize>) {
    let (sorted, perm) = sort_desc_with_perm(demand);
    let bounds = min_sum_prefixes(supply, sorted.len());
    let mut violations = Vec::new();
    let mut prefix = 0i64;
    for (k, (&v, &bound)) in sorted.iter().zip(&bounds).enumerate() {
        prefix += v;
        let rhs = bound + slack;
        if prefix > rhs {
            violations.push(Violation::new(family, k + 1, prefix, rhs));
        }
    }
    (violations, perm)
}

/// Existence test: is some degree pair inside the intervals realizable?
///
/// Holds exactly when prefixes of `c` (sorted descending) are dominated by
/// the conjugate min-sums of `b`, and prefixes of `a` (sorted descending) by
/// those of `d`. Violations carry the `T1.2-first` / `T1.2-second` tags.
pub fn check_existence(ip: &IntervalPair) -> CheckReport {
    let (mut violations, c_perm) =
        dominance_family(&ip.l2.lows(), &ip.l1.highs(), 0, Family::ExistenceFirst);
    let (second, a_perm) =
        dominance_family(&ip.l1.lows(), &ip.l2.highs(), 0, Family::ExistenceSecond);
    violations.extend(second);
    CheckReport::new(
        violations,
        vec![
            SortPerm {
                seq: SeqTag::LowerY,
                perm: c_perm,
            },
            SortPerm {
                seq: SeqTag::LowerX,
                perm: a_perm,
            },
        ],
    )
}

/// Sufficient condition for every valid pair to be bigraphic: inequality
/// family `(2)` bounds prefixes of `b` by conjugate min-sums of `c`, family
/// `(3)` bounds prefixes of `d` by conjugate min-sums of `a`.
pub fn check_sufficient(ip: &IntervalPair) -> CheckReport {
    let (mut violations, b_perm) =
        dominance_family(&ip.l1.highs(), &ip.l2.lows(), 0, Family::SufficientX);
    let (second, d_perm) = dominance_family(&ip.l2.highs(), &ip.l1.lows(), 0, Family::SufficientY);
    violations.extend(second);
    CheckReport::new(
        violations,
        vec![
            SortPerm {
                seq: SeqTag::UpperX,
                perm: b_perm,
            },
            SortPerm {
                seq: SeqTag::UpperY,
                perm: d_perm,
            },
        ],
    )
}

/// Necessary condition: the sufficient families relaxed by the absolute sum
/// gaps — `(4)` allows slack `|sum(b) - sum(c)|`, `(5)` allows
/// `|sum(d) - sum(a)|`.
pub fn check_necessary(ip: &IntervalPair) -> CheckReport {
    let slack_x = (ip.l1.high_sum() - ip.l2.low_sum()).abs();
    let slack_y = (ip.l2.high_sum() - ip.l1.low_sum()).abs();
    let (mut violations, b_perm) =
        dominance_family(&ip.l1.highs(), &ip.l2.lows(), slack_x, Family::NecessaryX);
    let (second, d_perm) =
        dominance_family(&ip.l2.highs(), &ip.l1.lows(), slack_y, Family::NecessaryY);
    violations.extend(second);
    CheckReport::new(
        violations,
        vec![
            SortPerm {
                seq: SeqTag::UpperX,
                perm: b_perm,
            },
            SortPerm {
                seq: SeqTag::UpperY,
                perm: d_perm,
            },
        ],
    )
}

/// Outcome of [`check_exact`]: the usual report plus a flag recording that
/// the sum hypotheses collapsed every interval to a single point (they
/// provably always do: `sum(b) = sum(c) <= sum(d) = sum(a) <= sum(b)` forces
/// `a = b` and `c = d` componentwise).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactReport {
    pub report: CheckReport,
    pub degenerate_forced: bool,
}

/// The exact characterization says nothing when the sum hypotheses fail;
/// carries all four bound sums for diagnosis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotApplicable {
    #[serde(rename = "a")]
    pub low_x_sum: i64,
    #[serde(rename = "b")]
    pub high_x_sum: i64,
    #[serde(rename = "c")]
    pub low_y_sum: i64,
    #[serde(rename = "d")]
    pub high_y_sum: i64,
}

impl fmt::Display for NotApplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sum hypotheses violated: sum(d)={} vs sum(a)={}, sum(c)={} vs sum(b)={}",
            self.high_y_sum, self.low_x_sum, self.low_y_sum, self.high_x_sum
        )
    }
}

impl std::error::Error for NotApplicable {}

/// Exact forcibly-bigraphic characterization, applicable only when
/// `sum(d) = sum(a)` and `sum(c) = sum(b)`. Under those hypotheses the
/// verdict equals forcibly-bigraphic: prefixes of `b` must be dominated by
/// conjugate min-sums of `c` and prefixes of `d` by those of `a` (the same
/// inequality families as the sufficient check, tagged `(2)` / `(3)`).
pub fn check_exact(ip: &IntervalPair) -> Result<ExactReport, NotApplicable> {
    let sums = NotApplicable {
        low_x_sum: ip.l1.low_sum(),
        high_x_sum: ip.l1.high_sum(),
        low_y_sum: ip.l2.low_sum(),
        high_y_sum: ip.l2.high_sum(),
    };
    if sums.high_y_sum != sums.low_x_sum || sums.low_y_sum != sums.high_x_sum {
        return Err(sums);
    }
    let report = check_sufficient(ip);
    let degenerate_forced = ip.l1.is_degenerate() && ip.l2.is_degenerate();
    Ok(ExactReport {
        report,
        degenerate_forced,
    })
}

/// Which proof construction produced a witness. Serialized tags are part of
/// the wire format; `brute-force` marks witnesses found by exhaustive
/// enumeration rather than by a direct construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstructionTag {
    #[serde(rename = "1.1")]
    Case11,
    #[serde(rename = "1.2")]
    Case12,
    #[serde(rename = "1.3-Qj")]
    Case13Qj,
    #[serde(rename = "2.2")]
    Case22,
    #[serde(rename = "2.3")]
    Case23,
    #[serde(rename = "2.4")]
    Case24,
    #[serde(rename = "brute-force")]
    BruteForce,
}

impl ConstructionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionTag::Case11 => "1.1",
            ConstructionTag::Case12 => "1.2",
            ConstructionTag::Case13Qj => "1.3-Qj",
            ConstructionTag::Case22 => "2.2",
            ConstructionTag::Case23 => "2.3",
            ConstructionTag::Case24 => "2.4",
            ConstructionTag::BruteForce => "brute-force",
        }
    }

    pub fn is_brute_force(self) -> bool {
        matches!(self, ConstructionTag::BruteForce)
    }
}

impl fmt::Display for ConstructionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A valid pair that is not bigraphic, certifying that its interval pair is
/// not forcibly bigraphic. `failing_r` is the first prefix at which the
/// dominance inequality fails for the pair (with `Q` sorted descending).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pair: DegreePair,
    pub failing_r: usize,
    pub construction_tag: ConstructionTag,
}

impl Witness {
    /// Revalidates both type invariants against the instance: the pair lies
    /// componentwise inside the intervals with equal sums, and it fails the
    /// bigraphic test exactly at `failing_r`.
    pub fn validate_against(&self, ip: &IntervalPair) -> bool {
        if !self.pair.is_valid_for(ip) {
            return false;
        }
        let report = is_bigraphic(&self.pair);
        !report.holds()
            && report.first_violation(Family::Dominance).map(|v| v.index) == Some(self.failing_r)
    }
}

/// Why [`necessity_witness`] could not return a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessError {
    /// Precondition violated: the necessary condition holds, so nothing
    /// obliges a witness to exist.
    NecessaryHolds,
    /// Precondition violated: the instance admits no valid pair at all
    /// (vacuously forcibly bigraphic).
    NoValidPairs,
    /// Brute force exhausted every valid pair and all were bigraphic. On
    /// non-vacuous input this contradicts the necessity theorem's
    /// contrapositive, so callers must surface it as a finding.
    NoneFound { pairs_examined: u64 },
    /// The enumeration budget ran out before the search finished.
    Budget(BudgetExceeded),
}

impl fmt::Display for WitnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessError::NecessaryHolds => {
                write!(f, "necessary condition holds; no witness is implied")
            }
            WitnessError::NoValidPairs => {
                write!(f, "no valid pair exists (vacuously forcibly bigraphic)")
            }
            WitnessError::NoneFound { pairs_examined } => write!(
                f,
                "no non-bigraphic valid pair among all {pairs_examined} valid pairs \
                 despite failed necessity"
            ),
            WitnessError::Budget(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for WitnessError {}

/// The three candidate families of the constructive necessity proof, keyed by
/// where the demand/supply sum gap `t` falls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CandidateFamily {
    /// `0 <= t <= m`: raise the `t` largest supply lower bounds by one,
    /// demand sits at its upper bounds.
    RaiseHead,
    /// `m < t <= n`: raise every supply lower bound by one and trim the
    /// demand tail by one.
    RaiseAllTrimTail,
    /// `t > n`: repeatedly trim the positive demand prefix until the whole
    /// gap is removed.
    RepeatedTrim,
}

struct Candidate {
    /// Supply-role values (the raised lower bounds), input coordinates.
    supply_values: Vec<i64>,
    /// Demand-role values (the trimmed upper bounds), input coordinates.
    demand_values: Vec<i64>,
    /// True when the supply role was played by `L2` (the `(4)` side).
    swapped: bool,
    family: CandidateFamily,
    t: i64,
}

impl Candidate {
    /// Subcase naming follows the proof's split on the prefix `r` at which
    /// the necessary condition failed (in the construction's orientation):
    /// `r < m` is a Case-1 subcase, `r >= m` a Case-2 one. Subcase 2.1
    /// shares 1.1's construction and is folded into it, matching the tag set.
    fn tag(&self, split_r: usize, supply_len: usize, demand_len: usize) -> ConstructionTag {
        let m = supply_len as i64;
        let n = demand_len as i64;
        let r = split_r as i64;
        match self.family {
            CandidateFamily::RaiseHead => ConstructionTag::Case11,
            CandidateFamily::RaiseAllTrimTail => {
                if r < m {
                    ConstructionTag::Case12
                } else if r <= m + n - self.t {
                    ConstructionTag::Case22
                } else {
                    ConstructionTag::Case23
                }
            }
            CandidateFamily::RepeatedTrim => {
                if r < m {
                    ConstructionTag::Case13Qj
                } else {
                    ConstructionTag::Case24
                }
            }
        }
    }
}

/// Removes exactly `surplus` units from a non-increasing sequence by whole
/// one-unit rounds over the positive prefix, finishing with a partial round
/// over the last positive slots. Returns `None` when the sequence hits zero
/// before the surplus is gone.
fn trim_surplus(sorted_desc: &[i64], surplus: i64) -> Option<Vec<i64>> {
    let mut values = sorted_desc.to_vec();
    let mut left = surplus;
    while left > 0 {
        let positive = values.iter().take_while(|&&v| v > 0).count();
        if positive == 0 {
            return None;
        }
        if left >= positive as i64 {
            for v in values.iter_mut().take(positive) {
                *v -= 1;
            }
            left -= positive as i64;
        } else {
            let skip = positive - left as usize;
            for v in values.iter_mut().take(positive).skip(skip) {
                *v -= 1;
            }
            left = 0;
        }
    }
    Some(values)
}

/// Builds the proof candidate for one side: `supply` plays the `(a, b)` role
/// and `demand` the `(c, d)` role. Returned values are mapped back to input
/// coordinates. `None` when the sum gap is negative or cannot be trimmed.
fn side_candidate(
    supply: &[(i64, i64)],
    demand: &[(i64, i64)],
) -> Option<(Vec<i64>, Vec<i64>, CandidateFamily, i64)> {
    let m = supply.len();
    let n = demand.len();
    let supply_lo: Vec<i64> = supply.iter().map(|&(lo, _)| lo).collect();
    let demand_hi: Vec<i64> = demand.iter().map(|&(_, hi)| hi).collect();
    let t = demand_hi.iter().sum::<i64>() - supply_lo.iter().sum::<i64>();
    if t < 0 {
        return None;
    }

    let (lo_sorted, supply_perm) = sort_desc_with_perm(&supply_lo);
    let (hi_sorted, demand_perm) = sort_desc_with_perm(&demand_hi);

    let (p_sorted, q_sorted, family) = if t <= m as i64 {
        let mut p = lo_sorted;
        for v in p.iter_mut().take(t as usize) {
            *v += 1;
        }
        (p, hi_sorted, CandidateFamily::RaiseHead)
    } else if t <= n as i64 {
        let p = lo_sorted.iter().map(|&v| v + 1).collect();
        let mut q = hi_sorted;
        let cut = t as usize - m;
        for v in q.iter_mut().skip(n - cut) {
            *v -= 1;
        }
        (p, q, CandidateFamily::RaiseAllTrimTail)
    } else {
        let q = trim_surplus(&hi_sorted, t)?;
        (lo_sorted, q, CandidateFamily::RepeatedTrim)
    };

    let mut p = vec![0i64; m];
    for (pos, &orig) in supply_perm.iter().enumerate() {
        p[orig] = p_sorted[pos];
    }
    let mut q = vec![0i64; n];
    for (pos, &orig) in demand_perm.iter().enumerate() {
        q[orig] = q_sorted[pos];
    }
    Some((p, q, family, t))
}

fn proof_candidates(ip: &IntervalPair) -> Vec<Candidate> {
    let mut candidates = Vec::new();
    if let Some((p, q, family, t)) = side_candidate(ip.l1.items(), ip.l2.items()) {
        candidates.push(Candidate {
            supply_values: p,
            demand_values: q,
            swapped: false,
            family,
            t,
        });
    }
    if let Some((p, q, family, t)) = side_candidate(ip.l2.items(), ip.l1.items()) {
        candidates.push(Candidate {
            supply_values: p,
            demand_values: q,
            swapped: true,
            family,
            t,
        });
    }
    candidates
}

/// Constructs a non-bigraphic valid pair for an instance whose necessary
/// condition fails.
///
/// Preconditions (checked, reported as errors): [`check_necessary`] fails,
/// and at least one valid pair exists. Candidates from the constructive
/// necessity proof are tried first — one per failing side, skipped when they
/// exit their intervals — and exhaustive enumeration is the fallback. Every
/// returned witness is revalidated against both of its type invariants.
pub fn necessity_witness(ip: &IntervalPair, budget: u64) -> Result<Witness, WitnessError> {
    let necessary = check_necessary(ip);
    if necessary.holds() {
        return Err(WitnessError::NecessaryHolds);
    }
    match enumerate_pairs(ip, budget).next() {
        None => return Err(WitnessError::NoValidPairs),
        Some(Err(e)) => return Err(WitnessError::Budget(e)),
        Some(Ok(_)) => {}
    }

    for candidate in proof_candidates(ip) {
        let (p, q) = if candidate.swapped {
            (
                candidate.demand_values.clone(),
                candidate.supply_values.clone(),
            )
        } else {
            (
                candidate.supply_values.clone(),
                candidate.demand_values.clone(),
            )
        };
        let Ok(pair) = DegreePair::new(p, q) else {
            continue; // construction left the caps (e.g. a decrement below zero)
        };
        if !pair.is_valid_for(ip) {
            continue;
        }
        let report = is_bigraphic(&pair);
        if report.holds() {
            continue;
        }
        let failing_r = report
            .first_violation(Family::Dominance)
            .expect("equal-sum non-bigraphic pair must fail dominance")
            .index;
        // The subcase split is driven by the prefix at which this side's
        // necessary inequality failed; when the inequality that failed lives
        // on the other side, fall back to the pair's own failing prefix.
        let watched = if candidate.swapped {
            Family::NecessaryX
        } else {
            Family::NecessaryY
        };
        let split_r = necessary
            .first_violation(watched)
            .map(|v| v.index)
            .unwrap_or(failing_r);
        let (supply_len, demand_len) = if candidate.swapped {
            (ip.n(), ip.m())
        } else {
            (ip.m(), ip.n())
        };
        let witness = Witness {
            pair,
            failing_r,
            construction_tag: candidate.tag(split_r, supply_len, demand_len),
        };
        assert!(
            witness.validate_against(ip),
            "proof-candidate witness failed revalidation"
        );
        return Ok(witness);
    }

    let mut pairs_examined = 0u64;
    for item in enumerate_pairs(ip, budget) {
        let pair = item.map_err(WitnessError::Budget)?;
        pairs_examined += 1;
        let report = is_bigraphic(&pair);
        if !report.holds() {
            let failing_r = report
                .first_violation(Family::Dominance)
                .expect("equal-sum non-bigraphic pair must fail dominance")
                .index;
            let witness = Witness {
                pair,
                failing_r,
                construction_tag: ConstructionTag::BruteForce,
            };
            assert!(
                witness.validate_against(ip),
                "brute-force witness failed revalidation"
            );
            return Ok(witness);
        }
    }
    Err(WitnessError::NoneFound { pairs_examined })
}
