//! Permutations of `1..=n`, seeded uniform sampling, and the combinatorial
//! statistics the analysis is phrased in: inversions, longest increasing and
//! longest decreasing subsequences.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::distr::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};

/// A bijection on `{1, …, n}` stored as its value array.
///
/// Position `j` (0-based in memory, `j + 1` in the usual 1-based reading)
/// holds the element found there.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Validates `values` as a permutation of `1..=values.len()`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidPermutation("too long".into()));
        }
        let mut seen = alloc::vec![false; n];
        for (pos, &v) in values.iter().enumerate() {
            let idx = v as usize;
            if idx == 0 || idx > n {
                return Err(Error::InvalidPermutation(alloc::format!(
                    "value {v} at position {} outside 1..={n}",
                    pos + 1
                )));
            }
            if core::mem::replace(&mut seen[idx - 1], true) {
                return Err(Error::InvalidPermutation(alloc::format!("value {v} repeated")));
            }
        }
        Ok(Permutation(values))
    }

    /// Wraps values already known to be a permutation.
    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    /// `[1, 2, …, n]`.
    pub fn identity(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Permutation((1..=n as u32).collect()))
    }

    /// `[n, n-1, …, 1]`.
    pub fn descending(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Permutation((1..=n as u32).rev().collect()))
    }

    /// Number of elements.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// The value array.
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// Consumes the permutation, returning its value array.
    pub fn into_values(self) -> Vec<u32> {
        self.0
    }

    /// The same values read right to left.
    pub fn reversed(&self) -> Permutation {
        let mut v = self.0.clone();
        v.reverse();
        Permutation(v)
    }

    /// Whether this is `1..=n` in order.
    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Single line of space-separated values.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses whitespace-separated values; a trailing newline is fine.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| Error::InvalidPermutation(alloc::format!("not an integer: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(values)
    }
}

impl AsRef<[u32]> for Permutation {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(invalid("n must be at least 1"))
    } else if n > u32::MAX as usize {
        Err(invalid("n does not fit in 32 bits"))
    } else {
        Ok(())
    }
}

/// Master seed from which every random stream is derived.
///
/// Trial `trial` of experiment `experiment` draws from a ChaCha8 generator
/// whose 256-bit key is the little-endian concatenation of
/// `master`, `experiment`, `trial` and the tag `b"sortlab\0"`. The stream is
/// therefore a pure function of the triple, independent of the order or
/// thread on which trials run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed {
    /// The user-visible 64-bit seed.
    pub master: u64,
}

/// Generator type handed out by [`Seed::stream`].
pub type Stream = ChaCha8Rng;

const STREAM_TAG: [u8; 8] = *b"sortlab\0";

impl Seed {
    /// Wraps a master seed.
    pub const fn new(master: u64) -> Self {
        Seed { master }
    }

    /// The generator for `(master, experiment, trial)`.
    pub fn stream(&self, experiment: u64, trial: u64) -> Stream {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.master.to_le_bytes());
        key[8..16].copy_from_slice(&experiment.to_le_bytes());
        key[16..24].copy_from_slice(&trial.to_le_bytes());
        key[24..].copy_from_slice(&STREAM_TAG);
        ChaCha8Rng::from_seed(key)
    }
}

/// Draws a uniformly random permutation of `1..=n`.
///
/// Fisher–Yates with rejection-based range sampling, so every one of the
/// `n!` outcomes is equally likely given an ideal generator.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Permutation> {
    check_n(n)?;
    let mut values: Vec<u32> = (1..=n as u32).collect();
    for i in (1..n).rev() {
        let j = Uniform::new_inclusive(0u32, i as u32).expect("non-empty range").sample(rng) as usize;
        values.swap(i, j);
    }
    Ok(Permutation(values))
}

/// Number of pairs of positions `a < b` with `values[a] > values[b]`.
///
/// Bottom-up merge counting, `O(n log n)`.
pub fn count_inversions(pi: &Permutation) -> u64 {
    count_inversions_slice(pi.values())
}

pub(crate) fn count_inversions_slice(values: &[u32]) -> u64 {
    let n = values.len();
    let mut src = values.to_vec();
    let mut dst = alloc::vec![0u32; n];
    let mut inversions = 0u64;
    let mut width = 1;
    while width < n {
        let mut lo = 0;
        while lo < n {
            let mid = (lo + width).min(n);
            let hi = (lo + 2 * width).min(n);
            let (mut i, mut j, mut k) = (lo, mid, lo);
            while i < mid && j < hi {
                if src[i] <= src[j] {
                    dst[k] = src[i];
                    i += 1;
                } else {
                    // every element still waiting in the left run exceeds src[j]
                    inversions += (mid - i) as u64;
                    dst[k] = src[j];
                    j += 1;
                }
                k += 1;
            }
            dst[k..k + (mid - i)].copy_from_slice(&src[i..mid]);
            k += mid - i;
            dst[k..k + (hi - j)].copy_from_slice(&src[j..hi]);
            lo = hi;
        }
        core::mem::swap(&mut src, &mut dst);
        width *= 2;
    }
    inversions
}

/// Length of the longest strictly increasing subsequence (patience method).
pub fn lis_length(pi: &Permutation) -> usize {
    // tops[t] = smallest possible tail of an increasing run of length t + 1
    let mut tops: Vec<u32> = Vec::new();
    for &x in pi.values() {
        let at = tops.partition_point(|&top| top < x);
        if at == tops.len() {
            tops.push(x);
        } else {
            tops[at] = x;
        }
    }
    tops.len()
}

/// Length of the longest strictly decreasing subsequence.
pub fn lds_length(pi: &Permutation) -> usize {
    let mut tops: Vec<u32> = Vec::new();
    for &x in pi.values() {
        let at = tops.partition_point(|&top| top > x);
        if at == tops.len() {
            tops.push(x);
        } else {
            tops[at] = x;
        }
    }
    tops.len()
}

/// Every permutation of `1..=n` in lexicographic order.
///
/// Intended for exhaustive checks on small `n`; the iterator is lazy.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut next: Option<Vec<u32>> = if n == 0 { None } else { Some((1..=n as u32).collect()) };
    core::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            next = Some(succ);
        }
        Some(Permutation(current))
    })
}

fn next_lexicographic(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
