//! Instrumented p-pass Shellsort.
//!
//! Pass `k` splits the list into the `h_k` chains of positions congruent
//! modulo `h_k` and insertion-sorts each chain. For every element `i` and
//! pass `k` the run records `m[i][k]`: how many members of `i`'s chain sit to
//! its left and exceed it when the pass starts, which is exactly how far the
//! insertion moves `i`. The matrix of these values, together with the gaps,
//! determines the input permutation; [`decode_trace`] rebuilds it.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::increments::IncrementSequence;
use crate::perm::Permutation;

/// Per-element, per-pass insertion distances of one Shellsort run.
///
/// Stored value-major: the entries of element `i` occupy one contiguous row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassTrace {
    n: usize,
    gaps: IncrementSequence,
    m: Vec<u32>,
}

impl PassTrace {
    /// Assembles a trace from a value-major `n × p` matrix.
    pub fn from_parts(n: usize, gaps: IncrementSequence, m: Vec<u32>) -> Result<Self> {
        gaps.check_for(n)?;
        if m.len() != n * gaps.passes() {
            return Err(invalid(alloc::format!("trace has {} entries, expected {} x {}", m.len(), n, gaps.passes())));
        }
        Ok(PassTrace { n, gaps, m })
    }

    /// Number of elements.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of passes.
    pub fn passes(&self) -> usize {
        self.gaps.passes()
    }

    /// The increment sequence the run used.
    pub fn gaps(&self) -> &IncrementSequence {
        &self.gaps
    }

    /// `m[element][pass]`, both 1-based.
    pub fn get(&self, element: usize, pass: usize) -> u32 {
        assert!((1..=self.n).contains(&element) && (1..=self.passes()).contains(&pass));
        self.m[(element - 1) * self.passes() + pass - 1]
    }

    /// Raw value-major matrix.
    pub fn entries(&self) -> &[u32] {
        &self.m
    }

    /// `(element, pass, m)` triples, element-major, both indices 1-based.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let p = self.passes();
        self.m.iter().enumerate().map(move |(idx, &m)| (idx / p + 1, idx % p + 1, m))
    }

    /// Sum of `m` over all elements for one pass (1-based).
    pub fn pass_total(&self, pass: usize) -> u64 {
        (1..=self.n).map(|i| u64::from(self.get(i, pass))).sum()
    }

    /// Checks `m[i][k] ≤ ⌈n / h_k⌉ − 1` for every entry.
    pub fn within_chain_limits(&self) -> bool {
        self.iter().all(|(_, k, m)| {
            let h = self.gaps.gaps()[k - 1];
            (m as usize) < self.n.div_ceil(h)
        })
    }
}

/// Exact operation counts of one run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SortStats {
    /// Data moves: the sum of all `m[i][k]`.
    pub moves: u64,
    /// Comparisons when every placement is charged `m + 1`: `moves + n·p`.
    pub paper_comparisons: u64,
    /// Comparator invocations the insertion loop actually made. A placement
    /// that runs into the head of its chain costs only `m`.
    pub raw_comparisons: u64,
    /// Moves broken down by pass.
    pub per_pass_moves: Vec<u64>,
}

/// Output of a traced [`shellsort`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellsortRun {
    /// Always the identity.
    pub sorted: Permutation,
    /// The full `m` matrix.
    pub trace: PassTrace,
    /// Counters.
    pub stats: SortStats,
}

/// Sorts a copy of `pi` with the given gaps, recording the full trace.
pub fn shellsort(pi: &Permutation, gaps: &IncrementSequence) -> Result<ShellsortRun> {
    let n = pi.len();
    gaps.check_for(n)?;
    let p = gaps.passes();
    let mut m = vec![0u32; n * p];
    let mut values = pi.values().to_vec();
    let stats = run_passes(&mut values, gaps.gaps(), |x, k, shifts| {
        m[(x as usize - 1) * p + k] = shifts;
    });
    Ok(ShellsortRun {
        sorted: Permutation::from_vec_unchecked(values),
        trace: PassTrace { n, gaps: gaps.clone(), m },
        stats,
    })
}

/// Same counters as [`shellsort`] without materialising the trace.
pub fn shellsort_counts(pi: &Permutation, gaps: &IncrementSequence) -> Result<(Permutation, SortStats)> {
    gaps.check_for(pi.len())?;
    let mut values = pi.values().to_vec();
    let stats = run_passes(&mut values, gaps.gaps(), |_, _, _| {});
    Ok((Permutation::from_vec_unchecked(values), stats))
}

/// One-pass Shellsort, i.e. straight insertion sort.
pub fn insertion_sort(pi: &Permutation) -> (Permutation, SortStats) {
    let gaps = IncrementSequence::validate(&[1], pi.len()).expect("[1] is valid for every n");
    shellsort_counts(pi, &gaps).expect("validated above")
}

fn run_passes(values: &mut [u32], gaps: &[usize], mut record: impl FnMut(u32, usize, u32)) -> SortStats {
    let n = values.len();
    let mut stats = SortStats { per_pass_moves: Vec::with_capacity(gaps.len()), ..SortStats::default() };
    for (k, &h) in gaps.iter().enumerate() {
        let mut pass_moves = 0u64;
        for &x in &values[..h.min(n)] {
            record(x, k, 0);
        }
        for j in h..n {
            let x = values[j];
            let mut pos = j;
            let mut shifts = 0u32;
            while pos >= h {
                let y = values[pos - h];
                if y < x {
                    break;
                }
                values[pos] = y;
                pos -= h;
                shifts += 1;
            }
            values[pos] = x;
            // the loop compared once per shift, plus once more unless it hit the chain head
            stats.raw_comparisons += u64::from(shifts) + u64::from(pos >= h);
            pass_moves += u64::from(shifts);
            record(x, k, shifts);
        }
        debug_assert!(is_h_sorted(values, h), "pass {k} left the list not {h}-sorted");
        stats.per_pass_moves.push(pass_moves);
        stats.moves += pass_moves;
    }
    stats.paper_comparisons = stats.moves + (n * gaps.len()) as u64;
    stats
}

/// Whether every `h`-chain of `values` is ascending.
pub fn is_h_sorted(values: &[u32], h: usize) -> bool {
    h == 0 || values.iter().zip(values.iter().skip(h)).all(|(a, b)| a < b)
}

/// Rebuilds the input permutation from a trace.
///
/// Works backwards from the sorted list. Once the output of pass `k` is
/// known, each of its chains holds a known set of values, and the `m`
/// entries of those values form an inversion table for the chain's order at
/// the start of the pass: placing the values largest first, each at index
/// `m` among those already placed, recovers that order. The result is then
/// re-sorted and its trace compared with the input, so a trace that no
/// permutation produces is rejected rather than silently mis-decoded.
pub fn decode_trace(trace: &PassTrace) -> Result<Permutation> {
    let n = trace.n;
    let gaps = trace.gaps.gaps();
    let mut current: Vec<u32> = (1..=n as u32).collect();
    let mut chain: Vec<u32> = Vec::new();
    let mut order: Vec<u32> = Vec::new();
    for (k, &h) in gaps.iter().enumerate().rev() {
        for start in 0..h.min(n) {
            chain.clear();
            chain.extend(current[start..].iter().step_by(h).copied());
            chain.sort_unstable();
            order.clear();
            for &x in chain.iter().rev() {
                let m = trace.get(x as usize, k + 1) as usize;
                if m > order.len() {
                    return Err(Error::CorruptTrace { element: x as usize, pass: k + 1 });
                }
                order.insert(m, x);
            }
            for (slot, &x) in current[start..].iter_mut().step_by(h).zip(&order) {
                *slot = x;
            }
        }
    }
    let decoded = Permutation::from_vec_unchecked(current);
    let replay = shellsort(&decoded, &trace.gaps)?;
    if let Some((element, pass, _)) = replay.trace.iter().zip(trace.iter()).find(|(a, b)| a.2 != b.2).map(|(_, b)| b) {
        return Err(Error::CorruptTrace { element, pass });
    }
    Ok(decoded)
}
