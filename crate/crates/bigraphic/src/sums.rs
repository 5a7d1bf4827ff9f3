//! Order and conjugate-sum utilities: stable descending sorts with
//! permutations, prefix sums, and the conjugate min-sum
//! `sum_min(seq, r) = sum_i min(seq_i, r)` that forms the right-hand side of
//! every dominance inequality in this crate.

/// Stable descending sort. Returns the sorted values together with the
/// permutation mapping sorted position -> original position; entries with
/// equal values keep their original relative order.
pub fn sort_desc_with_perm(seq: &[i64]) -> (Vec<i64>, Vec<usize>) {
    let mut perm: Vec<usize> = (0..seq.len()).collect();
    perm.sort_by(|&i, &j| seq[j].cmp(&seq[i]).then(i.cmp(&j)));
    let sorted = perm.iter().map(|&i| seq[i]).collect();
    (sorted, perm)
}

/// `sum_i min(seq_i, r)` — order-free in `seq`.
pub fn sum_min(seq: &[i64], r: usize) -> i64 {
    debug_assert!(r >= 1);
    let r = r as i64;
    seq.iter().map(|&s| s.min(r)).sum()
}

/// Prefix sums of the descending-sorted sequence: element `k-1` is the sum of
/// the `k` largest entries.
pub fn prefix_sums_desc(seq: &[i64]) -> Vec<i64> {
    debug_assert!(!seq.is_empty());
    let mut sorted = seq.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted
        .iter()
        .scan(0i64, |acc, &v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

/// All conjugate min-sums at once: element `r-1` equals `sum_min(seq, r)` for
/// `r in 1..=r_max`, computed in O(len + r_max) through the conjugate
/// partition (`sum_min(seq, r) = sum_{j<=r} #{i : seq_i >= j}`), so a full
/// dominance check never pays the O(len * r_max) direct cost.
pub fn min_sum_prefixes(seq: &[i64], r_max: usize) -> Vec<i64> {
    debug_assert!(r_max >= 1);
    // Entries are clamped at r_max: values beyond it contribute to every
    // threshold j <= r_max exactly as r_max itself does.
    let mut clamped_counts = vec![0i64; r_max + 1];
    for &s in seq {
        debug_assert!(s >= 0);
        clamped_counts[(s.min(r_max as i64)) as usize] += 1;
    }
    // at_least[j] = #{i : seq_i >= j}, for j in 1..=r_max
    let mut at_least = vec![0i64; r_max + 2];
    for j in (1..=r_max).rev() {
        at_least[j] = at_least[j + 1] + clamped_counts[j];
    }
    let mut out = Vec::with_capacity(r_max);
    let mut acc = 0i64;
    for &count in at_least.iter().take(r_max + 1).skip(1) {
        acc += count;
        out.push(acc);
    }
    out
}
