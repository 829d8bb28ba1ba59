//! Brute-force reference computations.
//!
//! Each function here is deliberately naive and shares no code with the
//! fast paths it is used to check. The `verify` command and the test suites
//! compare the two.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// `O(n²)` pair count.
pub fn pairwise_inversions(values: &[u32]) -> u64 {
    let mut count = 0;
    for a in 0..values.len() {
        for b in a + 1..values.len() {
            if values[a] > values[b] {
                count += 1;
            }
        }
    }
    count
}

/// `O(n²)` DP for the longest strictly increasing subsequence.
pub fn lis_length_dp(values: &[u32]) -> usize {
    longest_chain(values, |a, b| a < b)
}

/// `O(n²)` DP for the longest strictly decreasing subsequence.
pub fn lds_length_dp(values: &[u32]) -> usize {
    longest_chain(values, |a, b| a > b)
}

fn longest_chain(values: &[u32], before: impl Fn(u32, u32) -> bool) -> usize {
    let mut best = vec![1usize; values.len()];
    for j in 0..values.len() {
        for i in 0..j {
            if before(values[i], values[j]) && best[i] + 1 > best[j] {
                best[j] = best[i] + 1;
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Whether some positions `a < b < c` hold values with `v[c] < v[a] < v[b]`.
///
/// A permutation is sortable by one stack exactly when this is false.
pub fn contains_231(values: &[u32]) -> bool {
    let n = values.len();
    for a in 0..n {
        for b in a + 1..n {
            if values[b] <= values[a] {
                continue;
            }
            for c in b + 1..n {
                if values[c] < values[a] {
                    return true;
                }
            }
        }
    }
    false
}

/// Per-pass `m` values of a Shellsort run, straight from the definition:
/// for each element, count the larger elements to its left in its own chain
/// at the start of the pass. Each chain is then sorted with the standard
/// library sort to produce the next pass's input.
///
/// Returns the value-major matrix (`result[value - 1][pass]`) and the final
/// arrangement.
pub fn shellsort_trace_by_definition(values: &[u32], gaps: &[usize]) -> (Vec<Vec<u32>>, Vec<u32>) {
    let n = values.len();
    let mut current = values.to_vec();
    let mut m = vec![vec![0u32; gaps.len()]; n];
    for (k, &h) in gaps.iter().enumerate() {
        for start in 0..h.min(n) {
            let positions: Vec<usize> = (start..n).step_by(h).collect();
            for (idx, &pos) in positions.iter().enumerate() {
                let x = current[pos];
                let larger_left = positions[..idx].iter().filter(|&&q| current[q] > x).count();
                m[x as usize - 1][k] = larger_left as u32;
            }
            let mut chain: Vec<u32> = positions.iter().map(|&q| current[q]).collect();
            chain.sort_unstable();
            for (&pos, v) in positions.iter().zip(chain) {
                current[pos] = v;
            }
        }
    }
    (m, current)
}

/// Adjacent-swap count of plain Bubble Sort on a copy of `values`.
pub fn adjacent_swaps(values: &[u32]) -> u64 {
    let mut v = values.to_vec();
    let mut swaps = 0;
    for end in (1..v.len()).rev() {
        for j in 0..end {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                swaps += 1;
            }
        }
    }
    swaps
}

/// `C(n, k)` as an exact big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `log₂` of a positive big integer, accurate to about 1e-15 relative.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return libm::log2(x.to_u64().expect("fits") as f64);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits");
    libm::log2(top as f64) + shift as f64
}

/// `log₂ C(m + cells - 1, cells - 1)` from the exact binomial.
pub fn log_divisions_exact(m: u64, cells: u64) -> f64 {
    log2_big(&binomial(m + cells - 1, cells - 1))
}

/// `log₂ n!` from the exact factorial.
pub fn log2_factorial_exact(n: u64) -> f64 {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    log2_big(&acc)
}

/// Smallest `M` with `C(M + np - 1, np - 1) · n⁴ ≥ n!`, found by linear
/// scan over exact integers. Only practical for small `n`.
pub fn shellsort_move_bound_exact(n: u64, p: u64) -> u64 {
    let mut fact = BigUint::one();
    for i in 2..=n {
        fact *= i;
    }
    let n4 = BigUint::from(n).pow(4);
    let cells = n * p;
    let mut m = 0;
    loop {
        if binomial(m + cells - 1, cells - 1) * &n4 >= fact {
            return m;
        }
        m += 1;
    }
}
