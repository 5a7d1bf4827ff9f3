//! Deciding whether a concrete degree pair is bigraphic and constructing a
//! realization.
//!
//! A pair `(P; Q)` is bigraphic exactly when the two sums agree and, with `Q`
//! sorted descending, every prefix of `Q` is dominated by the conjugate
//! min-sum of `P`. The constructive direction is the degree-greedy method:
//! satisfy Y-vertices in order of decreasing demand, always connecting to the
//! X-vertices with the most remaining capacity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::report::{CheckReport, Family, SeqTag, SortPerm, Violation};
use crate::sums::{min_sum_prefixes, sort_desc_with_perm};
use crate::types::DegreePair;

/// A simple bipartite graph with prescribed degrees: `biadjacency[i][j] = 1`
/// means the edge `x_i - y_j` is present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteRealization {
    pub m: usize,
    pub n: usize,
    pub biadjacency: Vec<Vec<u8>>,
}

impl BipartiteRealization {
    /// X-side degrees recomputed from the matrix.
    pub fn row_sums(&self) -> Vec<i64> {
        self.biadjacency
            .iter()
            .map(|row| row.iter().map(|&e| e as i64).sum())
            .collect()
    }

    /// Y-side degrees recomputed from the matrix.
    pub fn col_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.n];
        for row in &self.biadjacency {
            for (j, &e) in row.iter().enumerate() {
                sums[j] += e as i64;
            }
        }
        sums
    }

    /// Edges as 0-based `(i, j)` pairs in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (i, row) in self.biadjacency.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e == 1 {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

/// Error returned by [`realize`] when the pair has no realization; carries the
/// same report [`is_bigraphic`] produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotBigraphic(pub CheckReport);

impl fmt::Display for NotBigraphic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree pair is not bigraphic")?;
        for v in &self.0.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for NotBigraphic {}

/// Tests whether `(P; Q)` is bigraphic.
///
/// The report lists the sum-equality violation and/or every prefix `r` where
/// the dominance inequality fails, with indices referring to `Q` sorted
/// descending (the permutation is included in the report). `P` is consumed
/// through the order-free conjugate min-sum, so it is never sorted.
pub fn is_bigraphic(pair: &DegreePair) -> CheckReport {
    let mut violations = Vec::new();

    let p_sum = pair.p_sum();
    let q_sum = pair.q_sum();
    if p_sum != q_sum {
        violations.push(Violation::new(
            Family::SumEquality,
            0,
            p_sum.max(q_sum),
            p_sum.min(q_sum),
        ));
    }

    let (q_sorted, q_perm) = sort_desc_with_perm(pair.q());
    let bounds = min_sum_prefixes(pair.p(), q_sorted.len());
    let mut prefix = 0i64;
    for (r, (&q, &bound)) in q_sorted.iter().zip(&bounds).enumerate() {
        prefix += q;
        if prefix > bound {
            violations.push(Violation::new(Family::Dominance, r + 1, prefix, bound));
        }
    }

    CheckReport::new(
        violations,
        vec![SortPerm {
            seq: SeqTag::Q,
            perm: q_perm,
        }],
    )
}

/// Constructs a realization of `(P; Q)`, or fails with the full check report.
///
/// Deterministic: Y-vertices are processed in descending residual demand
/// (ties broken toward the lower original index), each connecting to the
/// X-vertices of largest residual capacity (same tie-break), so the output
/// matrix is stable across runs and platforms.
pub fn realize(pair: &DegreePair) -> Result<BipartiteRealization, NotBigraphic> {
    let report = is_bigraphic(pair);
    if !report.holds() {
        return Err(NotBigraphic(report));
    }

    let m = pair.p().len();
    let n = pair.q().len();
    let mut biadjacency = vec![vec![0u8; n]; m];
    let mut capacity: Vec<i64> = pair.p().to_vec();

    // Unprocessed demands never change, so "descending residual demand" is a
    // fixed processing order.
    let mut y_order: Vec<usize> = (0..n).collect();
    y_order.sort_by(|&i, &j| pair.q()[j].cmp(&pair.q()[i]).then(i.cmp(&j)));

    let mut x_order: Vec<usize> = (0..m).collect();
    for &y in &y_order {
        let demand = pair.q()[y];
        assert!(demand <= m as i64, "dominance check admitted demand > m");
        x_order.sort_by(|&i, &j| capacity[j].cmp(&capacity[i]).then(i.cmp(&j)));
        for &x in x_order.iter().take(demand as usize) {
            assert!(
                capacity[x] > 0,
                "greedy ran out of capacity on a bigraphic pair"
            );
            biadjacency[x][y] = 1;
            capacity[x] -= 1;
        }
    }

    debug_assert!(capacity.iter().all(|&c| c == 0));
    Ok(BipartiteRealization { m, n, biadjacency })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use proptest::prelude::*;

    fn pair(p: &[i64], q: &[i64]) -> DegreePair {
        DegreePair::new(p.to_vec(), q.to_vec()).unwrap()
    }

    // -------------------------------------------------------------------
    // is_bigraphic
    // -------------------------------------------------------------------

    #[test]
    fn rejects_concentrated_demand() {
        let report = is_bigraphic(&pair(&[1, 3], &[2, 2]));
        assert_eq!(report.verdict, Verdict::Fails);
        assert_eq!(
            report.violations,
            vec![Violation::new(Family::Dominance, 2, 4, 3)]
        );
    }

    #[test]
    fn accepts_zero_and_complete_pairs() {
        assert!(is_bigraphic(&pair(&[0, 0], &[0, 0])).holds());
        assert!(is_bigraphic(&pair(&[2, 1], &[2, 1])).holds());
        assert!(is_bigraphic(&pair(&[2, 2], &[2, 2])).holds());
    }

    #[test]
    fn reports_sum_mismatch_with_larger_side_first() {
        let report = is_bigraphic(&pair(&[1], &[2, 2]));
        let v = report.first_violation(Family::SumEquality).unwrap();
        assert!(v.lhs > v.rhs);
        assert_eq!((v.lhs, v.rhs), (4, 1));
    }

    #[test]
    fn reports_every_failing_prefix() {
        // equal sums, but dominance fails at both r = 1 (4 > 2) and r = 2 (8 > 3)
        let report = is_bigraphic(&pair(&[7, 1], &[4, 4]));
        let viols: Vec<(usize, i64, i64)> = report
            .violations
            .iter()
            .filter(|v| v.family == Family::Dominance)
            .map(|v| (v.index, v.lhs, v.rhs))
            .collect();
        assert_eq!(viols, vec![(1, 4, 2), (2, 8, 3)]);
    }

    // -------------------------------------------------------------------
    // realize
    // -------------------------------------------------------------------

    #[test]
    fn realize_complete_2x2() {
        let r = realize(&pair(&[2, 2], &[2, 2])).unwrap();
        assert_eq!(r.biadjacency, vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn realize_is_deterministic_on_ties() {
        let r = realize(&pair(&[2, 1], &[2, 1])).unwrap();
        assert_eq!(r.edges(), vec![(0, 0), (0, 1), (1, 0)]);
    }

    #[test]
    fn realize_fails_exactly_like_the_check() {
        let err = realize(&pair(&[1, 3], &[2, 2])).unwrap_err();
        assert_eq!(err.0, is_bigraphic(&pair(&[1, 3], &[2, 2])));
    }

    #[test]
    fn realize_agrees_with_check_on_every_small_pair() {
        // every degree pair with m = n = 3 and entries <= 3
        for p_code in 0..64i64 {
            for q_code in 0..64i64 {
                let p = vec![(p_code / 16) % 4, (p_code / 4) % 4, p_code % 4];
                let q = vec![(q_code / 16) % 4, (q_code / 4) % 4, q_code % 4];
                let dp = pair(&p, &q);
                match realize(&dp) {
                    Ok(r) => {
                        assert!(is_bigraphic(&dp).holds());
                        assert_eq!(r.row_sums(), p);
                        assert_eq!(r.col_sums(), q);
                    }
                    Err(e) => {
                        assert!(!is_bigraphic(&dp).holds());
                        assert_eq!(e.0, is_bigraphic(&dp));
                    }
                }
            }
        }
    }

    // -------------------------------------------------------------------
    // invariances
    // -------------------------------------------------------------------

    proptest! {
        #[test]
        fn verdict_is_permutation_invariant(
            p in proptest::collection::vec(0i64..6, 1..6),
            q in proptest::collection::vec(0i64..6, 1..6),
            seed in 0u64..1000,
        ) {
            let base = is_bigraphic(&pair(&p, &q)).verdict;
            let mut p2 = p.clone();
            let mut q2 = q.clone();
            // cheap deterministic shuffle
            let mut s = seed;
            for i in (1..p2.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                p2.swap(i, (s % (i as u64 + 1)) as usize);
            }
            for i in (1..q2.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                q2.swap(i, (s % (i as u64 + 1)) as usize);
            }
            prop_assert_eq!(base, is_bigraphic(&pair(&p2, &q2)).verdict);
        }

        #[test]
        fn verdict_is_side_symmetric(
            p in proptest::collection::vec(0i64..6, 1..6),
            q in proptest::collection::vec(0i64..6, 1..6),
        ) {
            prop_assert_eq!(
                is_bigraphic(&pair(&p, &q)).verdict,
                is_bigraphic(&pair(&q, &p)).verdict
            );
        }

        #[test]
        fn realize_round_trips_degrees(
            p in proptest::collection::vec(0i64..6, 1..6),
            q in proptest::collection::vec(0i64..6, 1..6),
        ) {
            let dp = pair(&p, &q);
            match realize(&dp) {
                Ok(r) => {
                    prop_assert!(is_bigraphic(&dp).holds());
                    prop_assert_eq!(r.row_sums(), p);
                    prop_assert_eq!(r.col_sums(), q);
                }
                Err(_) => prop_assert!(!is_bigraphic(&dp).holds()),
            }
        }
    }
}
