//! Bit-budget lower bounds.
//!
//! Each solver finds the least value of a cost parameter (total moves,
//! stack count, device count) for which an encoding built from that cost is
//! long enough to describe an incompressible permutation, i.e. for which the
//! encoding length reaches `log₂ n! − c · log₂ n` bits. All logarithms are
//! base 2; additive `O(1)` slack is dropped.

use crate::error::{invalid, Result};

const LN_2: f64 = core::f64::consts::LN_2;

/// Below this, `log₂ n!` is summed term by term so small cases are exact
/// (e.g. `log₂ 2! = 1`).
const FACTORIAL_SUM_LIMIT: u64 = 256;

/// `log₂ n!`.
pub fn log2_factorial(n: u64) -> f64 {
    if n <= FACTORIAL_SUM_LIMIT {
        (2..=n).map(|i| libm::log2(i as f64)).sum()
    } else {
        libm::lgamma(n as f64 + 1.0) / LN_2
    }
}

/// `log₂ C(M + cells − 1, cells − 1)`: the number of ways to write `M` as an
/// ordered sum of `cells` nonnegative integers, in bits.
pub fn log_divisions(moves: u64, cells: u64) -> Result<f64> {
    if cells == 0 {
        return Err(invalid("cells must be at least 1"));
    }
    if moves == 0 || cells == 1 {
        return Ok(0.0);
    }
    let (m, c) = (moves as f64, cells as f64);
    let nats = libm::lgamma(m + c) - libm::lgamma(c) - libm::lgamma(m + 1.0);
    Ok((nats / LN_2).max(0.0))
}

/// A solved bound with its certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BudgetResult {
    /// Problem size.
    pub n: u64,
    /// Pass count, for the Shellsort bound.
    pub p: Option<u64>,
    /// The least value satisfying the budget.
    pub bound: u64,
    /// Encoding length at `bound`, in bits.
    pub lhs_at_bound: f64,
    /// Encoding length at `bound − 1`, when that value is in range.
    pub lhs_below: Option<f64>,
    /// Bits the encoding has to reach.
    pub rhs: f64,
    /// Set when the inputs lie outside the regime the bound is stated for.
    pub regime_warning: bool,
}

impl BudgetResult {
    /// `bound` meets the budget and `bound − 1` (if any) does not.
    pub fn is_minimal(&self) -> bool {
        self.lhs_at_bound >= self.rhs && self.lhs_below.is_none_or(|below| below < self.rhs)
    }
}

/// Least total move count `M` of a `p`-pass Shellsort on `n` elements with
/// `log_divisions(M, n·p) ≥ log₂ n! − 4 log₂ n`.
///
/// The bound is stated for `1 ≤ p ≤ log₂ n`; other `p ≥ 1` are still solved
/// but flagged.
pub fn shellsort_move_bound(n: u64, p: u64) -> Result<BudgetResult> {
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    if p == 0 {
        return Err(invalid("p must be at least 1"));
    }
    let regime_warning = p as f64 > libm::log2(n as f64);
    let rhs = log2_factorial(n) - 4.0 * libm::log2(n as f64);
    let cells = n * p;
    let f = |m: u64| log_divisions(m, cells).expect("cells >= 2");
    if rhs <= 0.0 {
        return Ok(BudgetResult { n, p: Some(p), bound: 0, lhs_at_bound: 0.0, lhs_below: None, rhs, regime_warning });
    }
    // f(0) = 0 < rhs; grow until the budget is met, then bisect
    let mut hi = 1u64;
    while f(hi) < rhs {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if f(mid) >= rhs {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // invariant: f(lo) < rhs <= f(hi)
    let bound = hi;
    Ok(BudgetResult {
        n,
        p: Some(p),
        bound,
        lhs_at_bound: f(bound),
        lhs_below: bound.checked_sub(1).map(f),
        rhs,
        regime_warning,
    })
}

/// Least `k ≥ 1` stacks in series with `2kn ≥ log₂ n! − log₂ n`.
pub fn sequential_stack_bound(n: u64) -> Result<BudgetResult> {
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    let rhs = log2_factorial(n) - libm::log2(n as f64);
    let bits = |k: u64| (2 * k * n) as f64;
    let mut k = libm::ceil(rhs / (2 * n) as f64).max(1.0) as u64;
    while k > 1 && bits(k - 1) >= rhs {
        k -= 1;
    }
    while bits(k) < rhs {
        k += 1;
    }
    Ok(BudgetResult {
        n,
        p: None,
        bound: k,
        lhs_at_bound: bits(k),
        lhs_below: (k > 1).then(|| bits(k - 1)),
        rhs,
        regime_warning: false,
    })
}

/// Least number `T ≥ 1` of parallel devices with `2n log₂ T ≥ log₂ n! − log₂ n`.
///
/// Holds for parallel stacks and parallel queues alike, since either move
/// sequence is `2n` device choices.
pub fn parallel_device_bound(n: u64) -> Result<BudgetResult> {
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    let rhs = log2_factorial(n) - libm::log2(n as f64);
    let bits = |t: u64| 2.0 * n as f64 * libm::log2(t as f64);
    let mut t = libm::ceil(libm::exp2(rhs / (2 * n) as f64)).max(1.0) as u64;
    while t > 1 && bits(t - 1) >= rhs {
        t -= 1;
    }
    while bits(t) < rhs {
        t += 1;
    }
    Ok(BudgetResult {
        n,
        p: None,
        bound: t,
        lhs_at_bound: bits(t),
        lhs_below: (t > 1).then(|| bits(t - 1)),
        rhs,
        regime_warning: false,
    })
}

/// `e · √n`, the longest increasing subsequence an incompressible
/// permutation of `n` elements can have.
pub fn lis_upper_bound(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    Ok(core::f64::consts::E * libm::sqrt(n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn log_divisions_examples() {
        assert_eq!(log_divisions(0, 5).unwrap(), 0.0);
        assert!((log_divisions(1, 2).unwrap() - 1.0).abs() < 1e-12);
        assert!((log_divisions(10, 3).unwrap() - libm::log2(66.0)).abs() < 1e-12);
        assert_eq!(log_divisions(7, 1).unwrap(), 0.0);
        assert!(log_divisions(3, 0).is_err());
    }

    #[test]
    fn log_divisions_matches_exact_binomials() {
        let ms = [0u64, 1, 2, 3, 7, 10, 99, 500, 1234, 4999, 9999];
        let cells = [1u64, 2, 3, 5, 16, 64, 100, 777, 2048, 9999];
        for &m in &ms {
            for &c in &cells {
                let fast = log_divisions(m, c).unwrap();
                let exact = oracle::log_divisions_exact(m, c);
                assert!((fast - exact).abs() < 1e-6, "M={m} cells={c}: {fast} vs {exact}");
            }
        }
    }

    #[test]
    fn log2_factorial_matches_exact() {
        for n in [0u64, 1, 2, 3, 10, 100, 255, 256, 257, 300, 1024, 5000] {
            let exact = oracle::log2_factorial_exact(n);
            assert!((log2_factorial(n) - exact).abs() < 1e-6 * exact.max(1.0), "n={n}");
        }
        assert_eq!(log2_factorial(2), 1.0);
    }

    #[test]
    fn shellsort_bound_examples() {
        let r = shellsort_move_bound(2, 1).unwrap();
        assert_eq!(r.bound, 0);
        assert!(r.rhs < 0.0);
        let r = shellsort_move_bound(8, 1).unwrap();
        assert_eq!(r.bound, 2);
        assert!(r.is_minimal());
        assert!(!r.regime_warning);
        assert!(shellsort_move_bound(8, 4).unwrap().regime_warning);
        assert!(shellsort_move_bound(8, 0).is_err());
        assert!(shellsort_move_bound(1, 1).is_err());
    }

    #[test]
    fn shellsort_bound_matches_exact_search() {
        for n in 2..=40u64 {
            for p in 1..=3u64 {
                let fast = shellsort_move_bound(n, p).unwrap();
                assert_eq!(fast.bound, oracle::shellsort_move_bound_exact(n, p), "n={n} p={p}");
                assert!(fast.is_minimal());
            }
        }
    }

    #[test]
    fn shellsort_bound_monotone_in_n() {
        for p in 1..=3 {
            let mut prev = 0;
            for n in 2..=600u64 {
                let b = shellsort_move_bound(n, p).unwrap().bound;
                assert!(b >= prev, "p={p} n={n}");
                prev = b;
            }
        }
    }

    #[test]
    fn sequential_bound_examples() {
        assert_eq!(sequential_stack_bound(2).unwrap().bound, 1);
        let r = sequential_stack_bound(1024).unwrap();
        assert_eq!(r.bound, 5);
        assert!((r.rhs - (8769.0 - 10.0)).abs() < 1.0);
        assert!(r.is_minimal());
    }

    #[test]
    fn parallel_bound_examples() {
        assert_eq!(parallel_device_bound(2).unwrap().bound, 1);
        let r = parallel_device_bound(1024).unwrap();
        assert_eq!(r.bound, 20);
        assert!(r.is_minimal());
    }

    #[test]
    fn lis_bound() {
        assert_eq!(lis_upper_bound(1).unwrap(), core::f64::consts::E);
        assert!((lis_upper_bound(10_000).unwrap() - 271.828).abs() < 1e-3);
        assert!(lis_upper_bound(0).is_err());
    }
}
