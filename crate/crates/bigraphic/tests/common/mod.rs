//! Shared helpers for the integration suites.

/// Every interval sequence of length `1..=max_len` whose bounds stay within
/// `0..=max_bound`, in a fixed enumeration order.
pub fn all_interval_sequences(max_len: usize, max_bound: i64) -> Vec<Vec<(i64, i64)>> {
    let mut slots = Vec::new();
    for lo in 0..=max_bound {
        for hi in lo..=max_bound {
            slots.push((lo, hi));
        }
    }
    let mut sequences: Vec<Vec<(i64, i64)>> = slots.iter().map(|&s| vec![s]).collect();
    let mut previous_len_start = 0;
    for _ in 2..=max_len {
        let current_end = sequences.len();
        for i in previous_len_start..current_end {
            for &slot in &slots {
                let mut extended = sequences[i].clone();
                extended.push(slot);
                sequences.push(extended);
            }
        }
        previous_len_start = current_end;
    }
    sequences
}
