//! Instrumented Bubble Sort.

use alloc::vec;
use alloc::vec::Vec;

use crate::perm::Permutation;

/// Counters of one Bubble Sort run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BubbleStats {
    /// Adjacent exchanges.
    pub exchanges: u64,
    /// Left-to-right passes, including the final exchange-free one that
    /// triggers early exit.
    pub passes_executed: u64,
    /// Adjacent comparisons.
    pub comparisons: u64,
}

/// Per-element movement during a Bubble Sort, indexed by value − 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeLedger {
    /// Exchanges in which the element moved one step right.
    pub right_steps: Vec<u64>,
    /// Exchanges in which the element moved one step left.
    pub left_steps: Vec<u64>,
}

/// Sorts a copy of `pi` by at most `n − 1` left-to-right passes of adjacent
/// exchanges, stopping early after a pass with no exchange.
pub fn bubble_sort(pi: &Permutation) -> (Permutation, BubbleStats) {
    let (sorted, stats, _) = run(pi, false);
    (sorted, stats)
}

/// [`bubble_sort`] plus the per-element record of right and left steps.
pub fn bubble_sort_ledger(pi: &Permutation) -> (Permutation, BubbleStats, ExchangeLedger) {
    let (sorted, stats, ledger) = run(pi, true);
    (sorted, stats, ledger.expect("requested"))
}

fn run(pi: &Permutation, keep_ledger: bool) -> (Permutation, BubbleStats, Option<ExchangeLedger>) {
    let mut v = pi.values().to_vec();
    let n = v.len();
    let mut ledger = keep_ledger.then(|| ExchangeLedger { right_steps: vec![0; n], left_steps: vec![0; n] });
    let mut stats = BubbleStats::default();
    for pass in 0..n.saturating_sub(1) {
        stats.passes_executed += 1;
        let mut swapped = false;
        for j in 0..n - 1 - pass {
            stats.comparisons += 1;
            if v[j] > v[j + 1] {
                if let Some(l) = ledger.as_mut() {
                    l.right_steps[v[j] as usize - 1] += 1;
                    l.left_steps[v[j + 1] as usize - 1] += 1;
                }
                v.swap(j, j + 1);
                stats.exchanges += 1;
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    (Permutation::from_vec_unchecked(v), stats, ledger)
}

/// Sum over elements of how far right of its start each element ends up
/// (the positive parts of the displacements).
pub fn rightward_displacement(pi: &Permutation) -> u64 {
    pi.values().iter().enumerate().map(|(pos, &v)| (v as u64 - 1).saturating_sub(pos as u64)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::perm::{all_permutations, count_inversions};

    fn p(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let (_, s) = bubble_sort(&p(&[1, 2, 3]));
        assert_eq!((s.exchanges, s.passes_executed, s.comparisons), (0, 1, 2));
        assert_eq!(bubble_sort(&p(&[3, 1, 2])).1.exchanges, 2);
        for n in 1..40u64 {
            let (sorted, s) = bubble_sort(&Permutation::descending(n as usize).unwrap());
            assert!(sorted.is_identity());
            assert_eq!(s.exchanges, n * (n - 1) / 2);
            assert_eq!(s.passes_executed, n.saturating_sub(1));
        }
        let (sorted, s) = bubble_sort(&p(&[1]));
        assert!(sorted.is_identity());
        assert_eq!(s, BubbleStats::default());
    }

    #[test]
    fn exhaustive_exchange_identity() {
        for n in 1..=8 {
            for pi in all_permutations(n) {
                let (sorted, s, ledger) = bubble_sort_ledger(&pi);
                assert!(sorted.is_identity());
                assert_eq!(s.exchanges, count_inversions(&pi));
                assert_eq!(s.exchanges, oracle::adjacent_swaps(pi.values()));
                assert!(s.passes_executed <= (n as u64).saturating_sub(1));
                assert_eq!(ledger.right_steps.iter().sum::<u64>(), s.exchanges);
                // net movement of every element is its displacement
                for (pos, &v) in pi.values().iter().enumerate() {
                    let i = v as usize - 1;
                    let net = ledger.right_steps[i] as i64 - ledger.left_steps[i] as i64;
                    assert_eq!(net, i as i64 - pos as i64);
                    let smaller_right = pi.values()[pos + 1..].iter().filter(|&&w| w < v).count();
                    assert_eq!(ledger.right_steps[i], smaller_right as u64);
                }
                assert!(rightward_displacement(&pi) <= s.exchanges);
            }
        }
    }

    #[test]
    fn positive_displacement_is_not_the_exchange_count() {
        // [3,2,1]: 3 exchanges, yet only element 3 ends right of where it began (by 2)
        let pi = p(&[3, 2, 1]);
        assert_eq!(bubble_sort(&pi).1.exchanges, 3);
        assert_eq!(rightward_displacement(&pi), 2);
    }
}
