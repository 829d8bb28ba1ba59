//! Quick oracle and invariant sweep behind `sortlab verify`.
//!
//! Each check prints one `PASS`/`FAIL` line. The sweep is sized to finish in
//! seconds; the test suites cover the same ground at larger scale.

use std::collections::HashSet;
use std::io::Write;

use sortlab_core::bounds::{parallel_device_bound, sequential_stack_bound, shellsort_move_bound};
use sortlab_core::elementary::{bubble_sort, bubble_sort_ledger, rightward_displacement};
use sortlab_core::networks::{
    decode_pushpop, encode_pushpop, find_sequential_sort, min_sequential_stacks, parallel_queue_sort,
    parallel_stack_sort, simulate_sequential_stacks, MinStacks, Scripted, SearchLimits,
};
use sortlab_core::perm::{all_permutations, count_inversions, lds_length, lis_length, random_permutation};
use sortlab_core::shellsort::{decode_trace, shellsort};
use sortlab_core::{oracle, IncrementSequence, Permutation, Seed};

use crate::experiment::{run_experiment, Algorithm, ExperimentSpec, Family};
use crate::fit::fit_exponent;

type Check = fn(Seed) -> Result<(), String>;

const CHECKS: &[(&str, Check)] = &[
    ("inversions, LIS and LDS match brute force", statistics),
    ("shellsort trace matches definition and decodes", shellsort_codec),
    ("bubble exchanges equal inversions", bubble),
    ("greedy devices equal LIS and LDS", parallel_devices),
    ("one-stack sortable iff 231-avoiding", one_stack),
    ("push/pop code is injective", pushpop),
    ("bound solvers match exact search", bounds),
    ("exponent fit recovers a power law", fit),
    ("experiment is independent of worker count", determinism),
];

/// Runs every check, writing one line each to `out`. Returns whether all
/// passed.
pub fn run_all(seed: u64, out: &mut impl Write) -> std::io::Result<bool> {
    let seed = Seed::new(seed);
    let mut ok = true;
    for (name, check) in CHECKS {
        match check(seed) {
            Ok(()) => writeln!(out, "PASS {name}")?,
            Err(why) => {
                ok = false;
                writeln!(out, "FAIL {name}: {why}")?;
            }
        }
    }
    Ok(ok)
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

/// `trials` permutations with sizes spread over `1..=max_n`.
fn sample(seed: Seed, tag: u64, trials: u64, max_n: usize) -> impl Iterator<Item = Permutation> {
    (0..trials).map(move |t| {
        let n = 1 + (t as usize * 7919) % max_n;
        random_permutation(n, &mut seed.stream(tag, t)).expect("n >= 1")
    })
}

fn statistics(seed: Seed) -> Result<(), String> {
    for pi in sample(seed, 1, 200, 300) {
        let v = pi.values();
        ensure(count_inversions(&pi) == oracle::pairwise_inversions(v), || format!("inversions of {pi:?}"))?;
        ensure(lis_length(&pi) == oracle::lis_length_dp(v), || format!("LIS of {pi:?}"))?;
        ensure(lds_length(&pi) == oracle::lds_length_dp(v), || format!("LDS of {pi:?}"))?;
    }
    Ok(())
}

fn shellsort_codec(seed: Seed) -> Result<(), String> {
    let gap_sets: [&[usize]; 4] = [&[1], &[2, 1], &[3, 1], &[4, 2, 1]];
    for n in 1..=6 {
        for gaps in gap_sets {
            let Ok(gaps) = IncrementSequence::validate(gaps, n) else { continue };
            for pi in all_permutations(n) {
                check_shellsort(&pi, &gaps)?;
            }
        }
    }
    for pi in sample(seed, 2, 300, 64) {
        let n = pi.len();
        let mut gaps = if n >= 8 { vec![n / 2 + 1, n / 4 + 1, 1] } else { vec![1] };
        gaps.dedup();
        let gaps = IncrementSequence::validate(&gaps, n).map_err(|e| e.to_string())?;
        check_shellsort(&pi, &gaps)?;
    }
    Ok(())
}

fn check_shellsort(pi: &Permutation, gaps: &IncrementSequence) -> Result<(), String> {
    let run = shellsort(pi, gaps).map_err(|e| e.to_string())?;
    let (m, sorted) = oracle::shellsort_trace_by_definition(pi.values(), gaps.gaps());
    let (n, p) = (pi.len() as u64, gaps.passes() as u64);
    ensure(run.sorted.is_identity() && sorted == run.sorted.values(), || format!("{pi:?} not sorted"))?;
    ensure(m.concat() == run.trace.entries(), || format!("trace of {pi:?} with {gaps}"))?;
    ensure(run.stats.paper_comparisons == run.stats.moves + n * p, || "comparisons differ from moves + np".into())?;
    ensure(run.stats.moves <= run.stats.raw_comparisons, || "raw comparisons below moves".into())?;
    ensure(run.stats.raw_comparisons <= run.stats.paper_comparisons, || "raw comparisons above M'".into())?;
    ensure(decode_trace(&run.trace).as_ref() == Ok(pi), || format!("decode of {pi:?} with {gaps}"))
}

fn bubble(seed: Seed) -> Result<(), String> {
    let exhaustive = (1..=6).flat_map(all_permutations);
    for pi in exhaustive.chain(sample(seed, 3, 200, 200)) {
        let (sorted, stats, ledger) = bubble_sort_ledger(&pi);
        ensure(sorted.is_identity(), || format!("{pi:?} not sorted"))?;
        ensure(stats.exchanges == count_inversions(&pi), || format!("exchanges of {pi:?}"))?;
        ensure(bubble_sort(&pi).1 == stats, || "ledger run differs".into())?;
        ensure(ledger.right_steps.iter().sum::<u64>() == stats.exchanges, || "right steps".into())?;
        ensure(rightward_displacement(&pi) <= stats.exchanges, || "displacement".into())?;
    }
    Ok(())
}

fn parallel_devices(seed: Seed) -> Result<(), String> {
    let exhaustive = (1..=6).flat_map(all_permutations);
    for pi in exhaustive.chain(sample(seed, 4, 200, 1000)) {
        let s = parallel_stack_sort(&pi);
        let q = parallel_queue_sort(&pi);
        ensure(s.devices_used == lis_length(&pi), || format!("stacks for {pi:?}"))?;
        ensure(q.devices_used == lds_length(&pi), || format!("queues for {pi:?}"))?;
        for run in [&s, &q] {
            let replayed = run.trace.replay(&pi).map_err(|e| e.to_string())?;
            ensure(run.output.is_identity() && replayed == run.output.values(), || format!("replay of {pi:?}"))?;
        }
    }
    Ok(())
}

fn one_stack(_: Seed) -> Result<(), String> {
    for n in 1..=6 {
        for pi in all_permutations(n) {
            let one = min_sequential_stacks(&pi, 1).map_err(|e| e.to_string())? == MinStacks::Found(1);
            ensure(one != oracle::contains_231(pi.values()), || format!("{pi:?}"))?;
        }
    }
    Ok(())
}

fn pushpop(_: Seed) -> Result<(), String> {
    for n in 1..=5 {
        for k in 1..=2 {
            let mut seen = HashSet::new();
            for pi in all_permutations(n) {
                let Some(moves) = find_sequential_sort(&pi, k, SearchLimits::default()).map_err(|e| e.to_string())?
                else {
                    continue;
                };
                let run = simulate_sequential_stacks(&pi, k, &mut Scripted::new(moves)).map_err(|e| e.to_string())?;
                let code = encode_pushpop(&run.trace).map_err(|e| e.to_string())?;
                ensure(decode_pushpop(&code).as_ref() == Ok(&pi), || format!("decode of {pi:?}"))?;
                ensure(seen.insert(code.bits), || format!("collision at {pi:?}"))?;
            }
        }
    }
    Ok(())
}

fn bounds(_: Seed) -> Result<(), String> {
    for n in 2..=24u64 {
        for p in 1..=3 {
            let r = shellsort_move_bound(n, p).map_err(|e| e.to_string())?;
            let exact = oracle::shellsort_move_bound_exact(n, p);
            ensure(r.bound == exact && r.is_minimal(), || format!("n={n} p={p}: {} vs {exact}", r.bound))?;
        }
    }
    let seq = sequential_stack_bound(1024).map_err(|e| e.to_string())?;
    let par = parallel_device_bound(1024).map_err(|e| e.to_string())?;
    ensure(seq.bound == 5 && seq.is_minimal(), || format!("sequential bound {}", seq.bound))?;
    ensure(par.bound == 20 && par.is_minimal(), || format!("parallel bound {}", par.bound))
}

fn fit(_: Seed) -> Result<(), String> {
    let points: Vec<(f64, f64)> = (3..9).map(|e| (f64::from(1 << e), 4.0 * f64::from(1 << e).powf(1.5))).collect();
    let f = fit_exponent(&points).map_err(|e| e.to_string())?;
    ensure((f.slope - 1.5).abs() < 1e-12 && (f.r_squared - 1.0).abs() < 1e-12, || format!("{f:?}"))
}

fn determinism(seed: Seed) -> Result<(), String> {
    let spec = ExperimentSpec {
        algorithm: Algorithm::Shellsort { family: Family::Shell },
        n_grid: vec![16, 32, 64, 128],
        trials: 16,
        seed: Some(seed.master),
    };
    let a = run_experiment(&spec, Some(1)).map_err(|e| e.to_string())?;
    let b = run_experiment(&spec, Some(3)).map_err(|e| e.to_string())?;
    ensure(a == b, || "reports differ".into())
}
