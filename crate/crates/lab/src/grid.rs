//! Parsing of `--n-grid`, `--p` and `--gaps` style lists.

use crate::error::{config, Result};

/// Parses a comma-separated list whose items are integers, powers `2^k`,
/// power ranges `2^a..2^b` (every power of two in between), or plain
/// inclusive ranges `a..b`.
///
/// ```
/// assert_eq!(sortlab::grid::parse_n_grid("2^3..2^5").unwrap(), [8, 16, 32]);
/// assert_eq!(sortlab::grid::parse_n_grid("10, 2^4, 3..5").unwrap(), [10, 16, 3, 4, 5]);
/// ```
pub fn parse_n_grid(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            match (power_of_two(lo.trim())?, power_of_two(hi.trim())?) {
                (Some(a), Some(b)) => out.extend((a..=b).map(|e| 1usize << e)),
                (None, None) => out.extend(int(lo.trim())?..=int(hi.trim())?),
                _ => return Err(config(format!("mixed range {item:?}: use 2^a..2^b or a..b"))),
            }
        } else if let Some(e) = power_of_two(item)? {
            out.push(1usize << e);
        } else {
            out.push(int(item)?);
        }
    }
    Ok(out)
}

fn power_of_two(s: &str) -> Result<Option<u32>> {
    let Some(exp) = s.strip_prefix("2^") else { return Ok(None) };
    let e: u32 = exp.trim().parse().map_err(|_| config(format!("bad exponent in {s:?}")))?;
    if e >= usize::BITS - 1 {
        return Err(config(format!("{s} is too large")));
    }
    Ok(Some(e))
}

fn int(s: &str) -> Result<usize> {
    s.parse().map_err(|_| config(format!("not a nonnegative integer: {s:?}")))
}

/// Integers separated by whitespace and/or commas.
pub fn parse_int_list(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(int).collect()
}
