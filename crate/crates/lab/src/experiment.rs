//! Seeded Monte Carlo runs over a grid of problem sizes.
//!
//! Trial `t` at size `n` sorts the permutation drawn from
//! `Seed::stream(n, t)`. Keying the stream on `n` rather than on a cell
//! index means every algorithm run with the same master seed sees the same
//! inputs at the same size, so per-permutation identities (bubble exchanges
//! equal insertion moves, stack count equals LIS length) survive
//! aggregation exactly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sortlab_core::elementary::bubble_sort;
use sortlab_core::increments::{
    chazelle_sequence, geometric_sequence, pratt_sequence, shell_sequence, two_pass_sequence, TWO_PASS_DEFAULT_C,
};
use sortlab_core::networks::{parallel_queue_sort, parallel_stack_sort};
use sortlab_core::perm::{lds_length, lis_length, random_permutation};
use sortlab_core::shellsort::shellsort_counts;
use sortlab_core::{IncrementSequence, Permutation, Seed, MAX_N};

use crate::error::{config, Result};
use crate::fit::fit_exponent;
use crate::report::{Cell, ExperimentReport, MetricSummary, Provenance, SeriesFit};

/// Master seed used when neither the spec, `--seed`, nor the environment
/// supplies one.
pub const DEFAULT_SEED: u64 = 0x5EED_2026;

/// Environment variable consulted for a seed when `--seed` is absent.
pub const SEED_ENV: &str = "SORTLAB_SEED";

/// Increment family for Shellsort cells. Gaps are generated per `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Family {
    /// `⌊n/2⌋, ⌊n/4⌋, …, 1`.
    Shell,
    /// `2^i 3^j < ⌊n/2⌋`.
    Pratt,
    /// `a^i (a+1)^j < ⌊n/2⌋`.
    Chazelle {
        /// Base.
        a: usize,
    },
    /// `[round(c n^{1/3}), 1]`.
    Twopass {
        /// Leading constant.
        #[serde(default = "default_c")]
        c: f64,
    },
    /// `⌈n^{(p−1)/p}⌉, …, ⌈n^{1/p}⌉, 1`.
    Geometric {
        /// Number of passes.
        passes: usize,
    },
    /// The same explicit gaps at every `n`.
    Custom {
        /// Gaps, largest first.
        gaps: Vec<usize>,
    },
}

fn default_c() -> f64 {
    TWO_PASS_DEFAULT_C
}

impl Family {
    /// Gaps for size `n`.
    pub fn gaps(&self, n: usize) -> Result<IncrementSequence> {
        Ok(match self {
            Family::Shell => shell_sequence(n)?,
            Family::Pratt => pratt_sequence(n)?,
            Family::Chazelle { a } => chazelle_sequence(n, *a)?,
            Family::Twopass { c } => two_pass_sequence(n, *c)?,
            Family::Geometric { passes } => geometric_sequence(n, *passes)?,
            Family::Custom { gaps } => IncrementSequence::validate(gaps, n)?,
        })
    }

    /// Column label; parameters are included and no commas appear.
    pub fn label(&self) -> String {
        match self {
            Family::Shell => "shell".into(),
            Family::Pratt => "pratt".into(),
            Family::Chazelle { a } => format!("chazelle:a={a}"),
            Family::Twopass { c } => format!("twopass:c={c}"),
            Family::Geometric { passes } => format!("geometric:passes={passes}"),
            Family::Custom { gaps } => {
                let parts: Vec<String> = gaps.iter().map(usize::to_string).collect();
                format!("custom:{}", parts.join(" "))
            }
        }
    }
}

/// What each trial runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Algorithm {
    /// p-pass Shellsort with the given family.
    Shellsort {
        /// Increment family.
        family: Family,
    },
    /// Straight insertion sort (Shellsort with gaps `[1]`).
    Insertion,
    /// Bubble Sort with early exit.
    Bubble,
    /// Greedy parallel stacks.
    Pstack,
    /// Greedy parallel queues.
    Pqueue,
}

impl Algorithm {
    /// Column label.
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Shellsort { .. } => "shellsort",
            Algorithm::Insertion => "insertion",
            Algorithm::Bubble => "bubble",
            Algorithm::Pstack => "pstack",
            Algorithm::Pqueue => "pqueue",
        }
    }

    fn family_label(&self) -> String {
        match self {
            Algorithm::Shellsort { family } => family.label(),
            _ => "none".into(),
        }
    }

    /// Metrics recorded per trial, in report order.
    pub fn metrics(&self) -> &'static [Metric] {
        match self {
            Algorithm::Shellsort { .. } | Algorithm::Insertion => {
                &[Metric::Moves, Metric::PaperComparisons, Metric::RawComparisons]
            }
            Algorithm::Bubble => &[Metric::Exchanges, Metric::Comparisons, Metric::PassesExecuted],
            Algorithm::Pstack => &[Metric::StacksUsed, Metric::LisLength],
            Algorithm::Pqueue => &[Metric::QueuesUsed, Metric::LdsLength],
        }
    }
}

/// A per-trial measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Shellsort data moves.
    Moves,
    /// Moves plus one comparison per element per pass.
    PaperComparisons,
    /// Comparisons the insertion loop actually made.
    RawComparisons,
    /// Bubble Sort adjacent exchanges.
    Exchanges,
    /// Bubble Sort comparisons.
    Comparisons,
    /// Bubble Sort passes.
    PassesExecuted,
    /// Parallel stacks opened.
    StacksUsed,
    /// Longest increasing subsequence of the input.
    LisLength,
    /// Parallel queues opened.
    QueuesUsed,
    /// Longest decreasing subsequence of the input.
    LdsLength,
}

impl Metric {
    /// Column label.
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Moves => "moves",
            Metric::PaperComparisons => "paper_comparisons",
            Metric::RawComparisons => "raw_comparisons",
            Metric::Exchanges => "exchanges",
            Metric::Comparisons => "comparisons",
            Metric::PassesExecuted => "passes_executed",
            Metric::StacksUsed => "stacks_used",
            Metric::LisLength => "lis_length",
            Metric::QueuesUsed => "queues_used",
            Metric::LdsLength => "lds_length",
        }
    }
}

/// One experiment: an algorithm, a grid of sizes, and a trial count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    /// Algorithm and, for Shellsort, its increment family.
    pub algorithm: Algorithm,
    /// Strictly increasing sizes.
    pub n_grid: Vec<usize>,
    /// Trials per size, at least 2.
    pub trials: usize,
    /// Master seed; [`DEFAULT_SEED`] when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ExperimentSpec {
    /// The master seed this spec runs with.
    pub fn resolved_seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    /// Checks everything that could fail mid-run and returns the gaps for
    /// each size (`None` for non-Shellsort algorithms).
    pub fn validate(&self) -> Result<Vec<Option<IncrementSequence>>> {
        if self.trials < 2 {
            return Err(config("trials must be at least 2"));
        }
        if let Some(w) = self.n_grid.windows(2).find(|w| w[0] >= w[1]) {
            return Err(config(format!("n_grid must be strictly increasing ({} then {})", w[0], w[1])));
        }
        self.n_grid
            .iter()
            .map(|&n| {
                if n == 0 {
                    return Err(config("n must be at least 1"));
                }
                if n > MAX_N {
                    return Err(config(format!("n = {n} exceeds the counter-safe cap {MAX_N}")));
                }
                match &self.algorithm {
                    Algorithm::Shellsort { family } => family
                        .gaps(n)
                        .map(Some)
                        .map_err(|e| config(format!("family {} at n = {n}: {e}", family.label()))),
                    Algorithm::Insertion => Ok(Some(IncrementSequence::validate(&[1], n)?)),
                    _ => Ok(None),
                }
            })
            .collect()
    }
}

/// Runs every cell of `spec`.
///
/// `workers` sizes the thread pool (`None` lets rayon decide). It changes
/// only how fast the report is produced, never its contents.
pub fn run_experiment(spec: &ExperimentSpec, workers: Option<usize>) -> Result<ExperimentReport> {
    let gap_plan = spec.validate()?;
    let seed = Seed::new(spec.resolved_seed());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| config(format!("thread pool: {e}")))?;
    let metrics = spec.algorithm.metrics();

    let mut cells = Vec::with_capacity(spec.n_grid.len());
    for (&n, gaps) in spec.n_grid.iter().zip(&gap_plan) {
        let samples: Vec<[u64; 3]> = pool.install(|| {
            (0..spec.trials as u64)
                .into_par_iter()
                .map(|t| {
                    let pi = random_permutation(n, &mut seed.stream(n as u64, t)).expect("n validated");
                    measure(&spec.algorithm, &pi, gaps.as_ref())
                })
                .collect()
        });
        let summaries = metrics
            .iter()
            .enumerate()
            .map(|(slot, &metric)| summarize(metric, samples.iter().map(|s| s[slot])))
            .collect();
        cells.push(Cell {
            algorithm: spec.algorithm.name().to_string(),
            family: spec.algorithm.family_label(),
            n,
            p: gaps.as_ref().map_or(0, IncrementSequence::passes),
            trials: spec.trials,
            metrics: summaries,
        });
    }

    let fits = metrics
        .iter()
        .enumerate()
        .filter_map(|(slot, &metric)| {
            let points: Vec<(f64, f64)> = cells.iter().map(|c| (c.n as f64, c.metrics[slot].mean)).collect();
            fit_exponent(&points).ok().map(|fit| SeriesFit {
                algorithm: spec.algorithm.name().to_string(),
                family: spec.algorithm.family_label(),
                metric,
                points: points.len(),
                fit,
            })
        })
        .collect();

    let mut recorded = spec.clone();
    recorded.seed = Some(seed.master);
    Ok(ExperimentReport {
        provenance: Provenance {
            spec: recorded,
            seed: seed.master,
            version: env!("CARGO_PKG_VERSION").to_string(),
            stream_rule: "ChaCha8 keyed by le64(seed) || le64(n) || le64(trial) || b\"sortlab\\0\"".into(),
        },
        cells,
        fits,
    })
}

fn measure(algorithm: &Algorithm, pi: &Permutation, gaps: Option<&IncrementSequence>) -> [u64; 3] {
    match algorithm {
        Algorithm::Shellsort { .. } | Algorithm::Insertion => {
            let (_, s) = shellsort_counts(pi, gaps.expect("gaps planned")).expect("gaps validated");
            [s.moves, s.paper_comparisons, s.raw_comparisons]
        }
        Algorithm::Bubble => {
            let (_, s) = bubble_sort(pi);
            [s.exchanges, s.comparisons, s.passes_executed]
        }
        Algorithm::Pstack => [parallel_stack_sort(pi).devices_used as u64, lis_length(pi) as u64, 0],
        Algorithm::Pqueue => [parallel_queue_sort(pi).devices_used as u64, lds_length(pi) as u64, 0],
    }
}

fn summarize(metric: Metric, values: impl Iterator<Item = u64> + Clone) -> MetricSummary {
    let count = values.clone().count();
    let total: u128 = values.clone().map(u128::from).sum();
    let mean = total as f64 / count as f64;
    let variance = if count > 1 {
        values.clone().map(|v| (v as f64 - mean).powi(2)).sum::<f64>() / (count - 1) as f64
    } else {
        0.0
    };
    MetricSummary {
        metric,
        total,
        mean,
        variance,
        min: values.clone().min().unwrap_or(0),
        max: values.max().unwrap_or(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(algorithm: Algorithm, n_grid: Vec<usize>, trials: usize) -> ExperimentSpec {
        ExperimentSpec { algorithm, n_grid, trials, seed: Some(11) }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(run_experiment(&spec(Algorithm::Insertion, vec![10], 1), None).is_err());
        assert!(run_experiment(&spec(Algorithm::Insertion, vec![10, 10], 2), None).is_err());
        assert!(run_experiment(&spec(Algorithm::Insertion, vec![0], 2), None).is_err());
        assert!(run_experiment(&spec(Algorithm::Bubble, vec![MAX_N + 1], 2), None).is_err());
        let pratt = Algorithm::Shellsort { family: Family::Pratt };
        assert!(run_experiment(&spec(pratt, vec![3], 2), None).is_err());
        let custom = Algorithm::Shellsort { family: Family::Custom { gaps: vec![8, 1] } };
        assert!(run_experiment(&spec(custom, vec![16, 8], 2), None).is_err());
    }

    #[test]
    fn summary_statistics() {
        let s = summarize(Metric::Moves, [1u64, 2, 3, 6].into_iter());
        assert_eq!((s.total, s.mean, s.min, s.max), (12, 3.0, 1, 6));
        assert!((s.variance - 14.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn family_labels_have_no_commas() {
        let fams = [
            Family::Shell,
            Family::Pratt,
            Family::Chazelle { a: 3 },
            Family::Twopass { c: 1.72 },
            Family::Geometric { passes: 3 },
            Family::Custom { gaps: vec![4, 2, 1] },
        ];
        for f in fams {
            assert!(!f.label().contains(','));
        }
        assert_eq!(Family::Custom { gaps: vec![4, 2, 1] }.label(), "custom:4 2 1");
    }

    #[test]
    fn spec_json_shape() {
        let text = r#"{"algorithm":{"name":"shellsort","family":{"kind":"twopass"}},"n_grid":[8,16],"trials":3}"#;
        let parsed: ExperimentSpec = serde_json::from_str(text).unwrap();
        assert_eq!(parsed.algorithm, Algorithm::Shellsort { family: Family::Twopass { c: 1.72 } });
        assert_eq!(parsed.seed, None);
        assert_eq!(parsed.resolved_seed(), DEFAULT_SEED);
    }
}
