//! Increment sequences for Shellsort.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Result, SequenceRule};

/// Gaps `h_1 > h_2 > … > h_p = 1` of a p-pass Shellsort.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncrementSequence {
    gaps: Vec<usize>,
}

impl IncrementSequence {
    /// Checks `gaps` for a run on `n` elements: non-empty, strictly
    /// decreasing, every gap in `[1, n - 1]`, last gap 1.
    ///
    /// A lone gap of 1 is accepted for `n = 1` so that insertion sort stays
    /// defined on every permutation.
    pub fn validate(gaps: &[usize], n: usize) -> Result<Self> {
        if gaps.is_empty() {
            return Err(SequenceRule::Empty.into());
        }
        if let Some(index) = gaps.windows(2).position(|w| w[0] <= w[1]) {
            return Err(SequenceRule::NotStrictlyDecreasing { index }.into());
        }
        for &gap in gaps {
            if gap == 0 || (gap >= n && gap != 1) {
                return Err(SequenceRule::OutOfRange { gap, n }.into());
            }
        }
        if gaps.last() != Some(&1) {
            return Err(SequenceRule::MustEndInOne.into());
        }
        Ok(IncrementSequence { gaps: gaps.to_vec() })
    }

    /// Re-checks an existing sequence against a concrete `n`.
    pub fn check_for(&self, n: usize) -> Result<()> {
        Self::validate(&self.gaps, n).map(drop)
    }

    /// The gaps, largest first.
    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    /// Number of passes `p`.
    pub fn passes(&self) -> usize {
        self.gaps.len()
    }
}

impl fmt::Display for IncrementSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gaps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Shell's original sequence `⌊n/2⌋, ⌊n/4⌋, …, 1`.
pub fn shell_sequence(n: usize) -> Result<IncrementSequence> {
    if n < 2 {
        return Err(invalid("shell sequence needs n >= 2"));
    }
    let mut gaps = Vec::new();
    let mut h = n / 2;
    while h >= 1 {
        gaps.push(h);
        h /= 2;
    }
    IncrementSequence::validate(&gaps, n)
}

/// All `2^i 3^j` below `⌊n/2⌋`, descending.
pub fn pratt_sequence(n: usize) -> Result<IncrementSequence> {
    if n < 4 {
        return Err(invalid("pratt sequence needs n >= 4"));
    }
    smooth_products(n, 2)
}

/// All `a^i (a+1)^j` below `⌊n/2⌋`, descending. `a = 2` gives Pratt's.
pub fn chazelle_sequence(n: usize, a: usize) -> Result<IncrementSequence> {
    if a < 2 {
        return Err(invalid("chazelle sequence needs a >= 2"));
    }
    if n < 4 {
        return Err(invalid("chazelle sequence needs n >= 4"));
    }
    smooth_products(n, a)
}

fn smooth_products(n: usize, a: usize) -> Result<IncrementSequence> {
    let limit = n / 2;
    let mut gaps = Vec::new();
    let mut outer = 1usize;
    while outer < limit {
        let mut g = outer;
        while g < limit {
            gaps.push(g);
            match g.checked_mul(a + 1) {
                Some(next) => g = next,
                None => break,
            }
        }
        match outer.checked_mul(a) {
            Some(next) => outer = next,
            None => break,
        }
    }
    gaps.sort_unstable_by(|x, y| y.cmp(x));
    gaps.dedup();
    IncrementSequence::validate(&gaps, n)
}

/// Default constant for [`two_pass_sequence`].
pub const TWO_PASS_DEFAULT_C: f64 = 1.72;

/// Two passes `[max(2, round(c · n^{1/3})), 1]`.
pub fn two_pass_sequence(n: usize, c: f64) -> Result<IncrementSequence> {
    if n < 8 {
        return Err(invalid("two-pass sequence needs n >= 8"));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(invalid("two-pass constant must be positive and finite"));
    }
    let h = libm::round(c * libm::cbrt(n as f64)) as usize;
    IncrementSequence::validate(&[h.max(2), 1], n)
}

/// `passes` gaps `⌈n^{(p-1)/p}⌉, …, ⌈n^{1/p}⌉, 1`.
///
/// Gaps that would repeat or reach `n` are dropped, so tiny `n` may get fewer
/// passes than asked for.
pub fn geometric_sequence(n: usize, passes: usize) -> Result<IncrementSequence> {
    if n < 2 {
        return Err(invalid("geometric sequence needs n >= 2"));
    }
    if passes == 0 {
        return Err(invalid("geometric sequence needs at least one pass"));
    }
    let mut gaps: Vec<usize> = Vec::with_capacity(passes);
    for j in 1..passes {
        let exponent = (passes - j) as f64 / passes as f64;
        // shave rounding noise so exact powers (1000^(2/3) = 100) do not round up
        let h = libm::ceil(libm::pow(n as f64, exponent) - 1e-9) as usize;
        if h < n && h > 1 && gaps.last().is_none_or(|&prev| h < prev) {
            gaps.push(h);
        }
    }
    gaps.push(1);
    IncrementSequence::validate(&gaps, n)
}
