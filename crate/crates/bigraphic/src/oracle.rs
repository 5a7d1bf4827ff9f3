//! Exhaustive ground truth at desk scale: enumerate every valid pair of an
//! interval pair, decide forcibly-bigraphic by brute force, cross-validate
//! the interval criteria against that ground truth, and generate seeded
//! random instances for fuzzing.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gale_ryser::is_bigraphic;
use crate::interval_criteria::{
    check_exact, check_existence, check_necessary, check_sufficient, ConstructionTag, Witness,
};
use crate::report::{Family, Verdict};
use crate::types::{DegreePair, IntervalPair, MAX_VALUE};

/// The enumeration explored more candidate states than its budget allows.
/// States count slot assignments and scan steps, including pruned partial
/// assignments, so run time is bounded even when few pairs qualify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetExceeded {
    pub budget: u64,
    pub partial_count: u64,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "enumeration budget of {} states exceeded after {} pairs",
            self.budget, self.partial_count
        )
    }
}

impl std::error::Error for BudgetExceeded {}

/// Lexicographically ascending enumeration of integer vectors lying in a box
/// `[lo_i, hi_i]` with a fixed total sum.
struct BoxCompositions {
    lo: Vec<i64>,
    hi: Vec<i64>,
    /// suffix_lo[i] = sum of lo[i..]; one slot past the end holds 0.
    suffix_lo: Vec<i64>,
    suffix_hi: Vec<i64>,
    cur: Vec<i64>,
}

impl BoxCompositions {
    fn new(items: &[(i64, i64)]) -> Self {
        let len = items.len();
        let lo: Vec<i64> = items.iter().map(|&(lo, _)| lo).collect();
        let hi: Vec<i64> = items.iter().map(|&(_, hi)| hi).collect();
        let mut suffix_lo = vec![0i64; len + 1];
        let mut suffix_hi = vec![0i64; len + 1];
        for i in (0..len).rev() {
            suffix_lo[i] = suffix_lo[i + 1] + lo[i];
            suffix_hi[i] = suffix_hi[i + 1] + hi[i];
        }
        BoxCompositions {
            cur: vec![0; len],
            lo,
            hi,
            suffix_lo,
            suffix_hi,
        }
    }

    /// Positions the cursor at the lexicographically smallest vector summing
    /// to `target`. False when no vector in the box has that sum.
    fn reset(&mut self, target: i64, states: &mut u64) -> bool {
        if target < self.suffix_lo[0] || target > self.suffix_hi[0] {
            return false;
        }
        self.fill_min(0, target, states);
        true
    }

    /// Fills slots `from..` with the smallest lexicographic assignment of the
    /// remaining sum: each slot takes its lower bound unless the suffix could
    /// not absorb the rest.
    fn fill_min(&mut self, from: usize, mut rem: i64, states: &mut u64) {
        for i in from..self.cur.len() {
            let v = self.lo[i].max(rem - self.suffix_hi[i + 1]);
            debug_assert!(v <= self.hi[i]);
            self.cur[i] = v;
            rem -= v;
            *states += 1;
        }
        debug_assert_eq!(rem, 0);
    }

    /// Advances to the next vector of the same sum in lexicographic order:
    /// bump the rightmost slot whose suffix can shrink by one, then minimize
    /// the suffix. False when exhausted.
    fn advance(&mut self, states: &mut u64) -> bool {
        let len = self.cur.len();
        let mut rem = 0i64;
        for j in (0..len.saturating_sub(1)).rev() {
            rem += self.cur[j + 1];
            *states += 1;
            if self.cur[j] < self.hi[j] && rem > self.suffix_lo[j + 1] {
                self.cur[j] += 1;
                self.fill_min(j + 1, rem - 1, states);
                return true;
            }
        }
        false
    }

    fn current(&self) -> &[i64] {
        &self.cur
    }
}

enum Phase {
    NextSum,
    InSum,
    Done,
}

/// Iterator over all valid pairs of an interval pair: componentwise inside
/// the bounds with equal total sums, each exactly once, ordered by total sum,
/// then `P` lexicographically, then `Q` lexicographically (both in input
/// coordinate order). Yields `Err(BudgetExceeded)` once and fuses when the
/// state budget runs out.
pub struct PairEnumerator {
    p_box: BoxCompositions,
    q_box: BoxCompositions,
    sum: i64,
    sum_hi: i64,
    budget: u64,
    states: u64,
    yielded: u64,
    phase: Phase,
}

impl PairEnumerator {
    fn over_budget(&mut self) -> Option<Result<DegreePair, BudgetExceeded>> {
        if self.states > self.budget {
            self.phase = Phase::Done;
            Some(Err(BudgetExceeded {
                budget: self.budget,
                partial_count: self.yielded,
            }))
        } else {
            None
        }
    }

    fn current_pair(&mut self) -> Option<Result<DegreePair, BudgetExceeded>> {
        self.yielded += 1;
        Some(Ok(DegreePair::from_checked(
            self.p_box.current().to_vec(),
            self.q_box.current().to_vec(),
        )))
    }
}

impl Iterator for PairEnumerator {
    type Item = Result<DegreePair, BudgetExceeded>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            match self.phase {
                Phase::Done => return None,
                Phase::NextSum => {
                    if self.sum > self.sum_hi {
                        self.phase = Phase::Done;
                        continue;
                    }
                    let ok_p = self.p_box.reset(self.sum, &mut self.states);
                    let ok_q = self.q_box.reset(self.sum, &mut self.states);
                    debug_assert!(ok_p && ok_q, "sum window is feasible for both sides");
                    self.phase = Phase::InSum;
                    if let Some(err) = self.over_budget() {
                        return Some(err);
                    }
                    return self.current_pair();
                }
                Phase::InSum => {
                    if self.q_box.advance(&mut self.states) {
                        if let Some(err) = self.over_budget() {
                            return Some(err);
                        }
                        return self.current_pair();
                    }
                    if self.p_box.advance(&mut self.states) {
                        let ok = self.q_box.reset(self.sum, &mut self.states);
                        debug_assert!(ok);
                        if let Some(err) = self.over_budget() {
                            return Some(err);
                        }
                        return self.current_pair();
                    }
                    self.sum += 1;
                    self.phase = Phase::NextSum;
                    if let Some(err) = self.over_budget() {
                        return Some(err);
                    }
                }
            }
        }
    }
}

/// Enumerates the quantifier domain of the forcibly-bigraphic definition.
/// The sum ranges over `[max(sum(a), sum(c)), min(sum(b), sum(d))]`; sums
/// outside that window cannot be hit by both sides at once.
pub fn enumerate_pairs(ip: &IntervalPair, budget: u64) -> PairEnumerator {
    assert!(budget >= 1, "budget must be positive");
    let sum_lo = ip.l1.low_sum().max(ip.l2.low_sum());
    let sum_hi = ip.l1.high_sum().min(ip.l2.high_sum());
    PairEnumerator {
        p_box: BoxCompositions::new(ip.l1.items()),
        q_box: BoxCompositions::new(ip.l2.items()),
        sum: sum_lo,
        sum_hi,
        budget,
        states: 0,
        yielded: 0,
        phase: if sum_lo > sum_hi {
            Phase::Done
        } else {
            Phase::NextSum
        },
    }
}

/// How an interval pair relates to the forcibly-bigraphic definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForciblyKind {
    /// Every valid pair is bigraphic and at least one valid pair exists.
    Forcibly,
    /// No valid pair exists; forcibly bigraphic by empty quantification.
    VacuouslyForcibly,
    /// Some valid pair is not bigraphic.
    NotForcibly,
}

impl ForciblyKind {
    pub fn is_forcibly(self) -> bool {
        !matches!(self, ForciblyKind::NotForcibly)
    }
}

/// Ground-truth verdict from exhaustive enumeration. The witness is present
/// exactly for `NotForcibly` and is the lexicographically first non-bigraphic
/// valid pair; `pairs_examined = 0` exactly for `VacuouslyForcibly`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForciblyVerdict {
    pub kind: ForciblyKind,
    pub witness: Option<Witness>,
    pub pairs_examined: u64,
}

fn brute_witness(pair: DegreePair) -> Witness {
    let report = is_bigraphic(&pair);
    let failing_r = report
        .first_violation(Family::Dominance)
        .expect("equal-sum non-bigraphic pair must fail dominance")
        .index;
    Witness {
        pair,
        failing_r,
        construction_tag: ConstructionTag::BruteForce,
    }
}

/// Decides forcibly-bigraphic by brute force, stopping at the first
/// non-bigraphic pair.
pub fn brute_forcibly(ip: &IntervalPair, budget: u64) -> Result<ForciblyVerdict, BudgetExceeded> {
    let mut pairs_examined = 0u64;
    for item in enumerate_pairs(ip, budget) {
        let pair = item?;
        pairs_examined += 1;
        if !is_bigraphic(&pair).holds() {
            let witness = brute_witness(pair);
            debug_assert!(witness.validate_against(ip));
            return Ok(ForciblyVerdict {
                kind: ForciblyKind::NotForcibly,
                witness: Some(witness),
                pairs_examined,
            });
        }
    }
    Ok(ForciblyVerdict {
        kind: if pairs_examined == 0 {
            ForciblyKind::VacuouslyForcibly
        } else {
            ForciblyKind::Forcibly
        },
        witness: None,
        pairs_examined,
    })
}

/// One theorem under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremTag {
    #[serde(rename = "T1.2")]
    T12,
    #[serde(rename = "T1.3")]
    T13,
    #[serde(rename = "T1.4")]
    T14,
    #[serde(rename = "T1.6")]
    T16,
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremTag::T12 => "T1.2",
            TheoremTag::T13 => "T1.3",
            TheoremTag::T14 => "T1.4",
            TheoremTag::T16 => "T1.6",
        })
    }
}

/// A tested implication that failed on a concrete instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub theorem: TheoremTag,
    pub detail: String,
    pub instance: IntervalPair,
}

/// Per-theorem verdicts of the interval criteria on one instance. `exact` is
/// absent when the exact characterization's sum hypotheses are not met.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predictions {
    pub existence: Verdict,
    pub sufficient: Verdict,
    pub necessary: Verdict,
    pub exact: Option<Verdict>,
}

/// Oracle facts about one instance: the brute-force forcibly verdict and
/// whether any bigraphic valid pair exists at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub forcibly: ForciblyVerdict,
    pub bigraphic_pair_exists: bool,
}

/// Everything `validate` learned about one instance. When the budget ran out
/// the record is marked partial, ground truth is absent, and no implication
/// is judged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationRecord {
    pub instance: IntervalPair,
    pub predictions: Predictions,
    pub ground_truth: Option<GroundTruth>,
    pub partial: bool,
    pub findings: Vec<Finding>,
}

/// Runs every interval criterion and the brute-force oracle on one instance
/// and records each violated implication:
///
/// - existence check agrees (both directions) with "some valid pair is
///   bigraphic";
/// - sufficient holding implies forcibly or vacuously forcibly;
/// - forcibly on a non-vacuous instance implies necessary holds (vacuous
///   instances are excluded by design and visible through the verdict kind);
/// - when applicable, the exact characterization agrees (both directions)
///   with forcibly/vacuously-forcibly.
pub fn validate(ip: &IntervalPair, budget: u64) -> ValidationRecord {
    let predictions = Predictions {
        existence: check_existence(ip).verdict,
        sufficient: check_sufficient(ip).verdict,
        necessary: check_necessary(ip).verdict,
        exact: check_exact(ip).ok().map(|r| r.report.verdict),
    };

    // One sweep answers both ground-truth questions; it may stop early once
    // a non-bigraphic pair is in hand and a bigraphic one has been seen.
    let mut pairs_examined = 0u64;
    let mut witness = None;
    let mut any_bigraphic = false;
    let mut exceeded = false;
    for item in enumerate_pairs(ip, budget) {
        match item {
            Err(_) => {
                exceeded = true;
                break;
            }
            Ok(pair) => {
                pairs_examined += 1;
                if is_bigraphic(&pair).holds() {
                    any_bigraphic = true;
                } else if witness.is_none() {
                    witness = Some(brute_witness(pair));
                }
                if any_bigraphic && witness.is_some() {
                    break;
                }
            }
        }
    }
    if exceeded {
        return ValidationRecord {
            instance: ip.clone(),
            predictions,
            ground_truth: None,
            partial: true,
            findings: Vec::new(),
        };
    }

    let kind = if pairs_examined == 0 {
        ForciblyKind::VacuouslyForcibly
    } else if witness.is_some() {
        ForciblyKind::NotForcibly
    } else {
        ForciblyKind::Forcibly
    };
    let ground = GroundTruth {
        forcibly: ForciblyVerdict {
            kind,
            witness,
            pairs_examined,
        },
        bigraphic_pair_exists: any_bigraphic,
    };

    let mut findings = Vec::new();
    let predicted_exists = predictions.existence == Verdict::Holds;
    if predicted_exists != ground.bigraphic_pair_exists {
        findings.push(Finding {
            theorem: TheoremTag::T12,
            detail: format!(
                "existence check says {predicted_exists}, oracle found bigraphic pair: {}",
                ground.bigraphic_pair_exists
            ),
            instance: ip.clone(),
        });
    }
    if predictions.sufficient == Verdict::Holds && kind == ForciblyKind::NotForcibly {
        findings.push(Finding {
            theorem: TheoremTag::T13,
            detail: "sufficient condition holds on a non-forcibly instance".to_string(),
            instance: ip.clone(),
        });
    }
    if kind == ForciblyKind::Forcibly && predictions.necessary == Verdict::Fails {
        findings.push(Finding {
            theorem: TheoremTag::T14,
            detail: "necessary condition fails on a forcibly (non-vacuous) instance".to_string(),
            instance: ip.clone(),
        });
    }
    if let Some(exact) = predictions.exact {
        if (exact == Verdict::Holds) != kind.is_forcibly() {
            findings.push(Finding {
                theorem: TheoremTag::T16,
                detail: format!("exact characterization says {exact:?}, oracle says {kind:?}"),
                instance: ip.clone(),
            });
        }
    }

    ValidationRecord {
        instance: ip.clone(),
        predictions,
        ground_truth: Some(ground),
        partial: false,
        findings,
    }
}

/// Instance-generation mode: `ExactSumHypotheses` post-processes the draw so
/// the exact characterization's sum hypotheses hold, which provably collapses
/// every interval to a point, so the generator draws points and balances the
/// two sides' sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenMode {
    Unconstrained,
    ExactSumHypotheses,
}

fn balance_sums(raise: &mut [i64], lower: &mut [i64], deg_max: i64, mut gap: i64) {
    for v in raise.iter_mut() {
        if gap == 0 {
            return;
        }
        let add = gap.min(deg_max - *v);
        *v += add;
        gap -= add;
    }
    for v in lower.iter_mut() {
        if gap == 0 {
            return;
        }
        let sub = gap.min(*v);
        *v -= sub;
        gap -= sub;
    }
    debug_assert_eq!(gap, 0);
}

/// Deterministic seeded instance generator: draws `m in [1, m_max]`,
/// `n in [1, n_max]`, then per slot `lo` uniform in `[0, deg_max]` and `hi`
/// uniform in `[lo, deg_max]`.
pub fn gen_instance(
    seed: u64,
    m_max: usize,
    n_max: usize,
    deg_max: i64,
    mode: GenMode,
) -> IntervalPair {
    assert!(m_max >= 1 && n_max >= 1, "side caps must be positive");
    assert!((1..=MAX_VALUE).contains(&deg_max), "deg_max out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.random_range(1..=m_max);
    let n = rng.random_range(1..=n_max);
    match mode {
        GenMode::Unconstrained => {
            let draw = |rng: &mut ChaCha8Rng, len: usize| -> Vec<(i64, i64)> {
                (0..len)
                    .map(|_| {
                        let lo = rng.random_range(0..=deg_max);
                        let hi = rng.random_range(lo..=deg_max);
                        (lo, hi)
                    })
                    .collect()
            };
            let l1 = draw(&mut rng, m);
            let l2 = draw(&mut rng, n);
            IntervalPair::from_bounds(l1, l2).expect("generator respects the caps")
        }
        GenMode::ExactSumHypotheses => {
            let mut x: Vec<i64> = (0..m).map(|_| rng.random_range(0..=deg_max)).collect();
            let mut y: Vec<i64> = (0..n).map(|_| rng.random_range(0..=deg_max)).collect();
            let gap = x.iter().sum::<i64>() - y.iter().sum::<i64>();
            if gap > 0 {
                balance_sums(&mut y, &mut x, deg_max, gap);
            } else {
                balance_sums(&mut x, &mut y, deg_max, -gap);
            }
            let l1 = x.into_iter().map(|v| (v, v)).collect();
            let l2 = y.into_iter().map(|v| (v, v)).collect();
            IntervalPair::from_bounds(l1, l2).expect("generator respects the caps")
        }
    }
}
