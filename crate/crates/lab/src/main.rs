use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sortlab::error::LabError;
use sortlab::experiment::{run_experiment, ExperimentSpec, DEFAULT_SEED, SEED_ENV};
use sortlab::grid::{parse_int_list, parse_n_grid};
use sortlab::io::{network_trace_csv, pass_trace_csv, read_permutation};
use sortlab::{verify, Result};
use sortlab_core::bounds::{parallel_device_bound, sequential_stack_bound, shellsort_move_bound, BudgetResult};
use sortlab_core::elementary::bubble_sort;
use sortlab_core::increments::{
    chazelle_sequence, pratt_sequence, shell_sequence, two_pass_sequence, TWO_PASS_DEFAULT_C,
};
use sortlab_core::networks::{min_sequential_stacks, parallel_queue_sort, parallel_stack_sort, MinStacks};
use sortlab_core::shellsort::shellsort;
use sortlab_core::IncrementSequence;

/// Instrumented sorting laboratory.
#[derive(Parser)]
#[command(name = "sortlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an increment sequence, largest gap first.
    GenIncrements {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        /// Chazelle base.
        #[arg(long, default_value_t = 2)]
        a: usize,
        /// Two-pass constant.
        #[arg(long, default_value_t = TWO_PASS_DEFAULT_C)]
        c: f64,
        /// Gaps for the custom family, e.g. "4 2 1".
        #[arg(long)]
        gaps: Option<String>,
    },
    /// Sort one permutation file and print the result and its counters.
    Sort {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        input: PathBuf,
        /// Shellsort gaps, e.g. "4 2 1".
        #[arg(long)]
        gaps: Option<String>,
        /// Write the pass or device trace as CSV.
        #[arg(long)]
        dump_trace: Option<PathBuf>,
    },
    /// Fewest stacks in series that sort a (small) permutation.
    Minstacks {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
    },
    /// Tabulate a lower bound as CSV.
    Bounds {
        #[arg(long, value_enum)]
        table: TableArg,
        #[arg(long, default_value = "2^8..2^16")]
        n_grid: String,
        /// Pass counts, for the shellsort table.
        #[arg(long, default_value = "1,2,3")]
        p: String,
    },
    /// Run a Monte Carlo experiment from a JSON spec.
    Experiment {
        #[arg(long)]
        spec: PathBuf,
        /// JSON report.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Two-column log-log plot data.
        #[arg(long)]
        plot: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        /// Overrides the spec's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the oracle and invariant suite.
    Verify {
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Shell,
    Pratt,
    Chazelle,
    Twopass,
    Custom,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Shellsort,
    Insertion,
    Bubble,
    Pstack,
    Pqueue,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Shellsort,
    Sequential,
    Parallel,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sortlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    let mut out = std::io::stdout().lock();
    match command {
        Command::GenIncrements { family, n, a, c, gaps } => {
            let seq = match family {
                FamilyArg::Shell => shell_sequence(n)?,
                FamilyArg::Pratt => pratt_sequence(n)?,
                FamilyArg::Chazelle => chazelle_sequence(n, a)?,
                FamilyArg::Twopass => two_pass_sequence(n, c)?,
                FamilyArg::Custom => parse_gaps(gaps.as_deref(), n)?,
            };
            writeln!(out, "{seq}")?;
        }
        Command::Sort { algo, input, gaps, dump_trace } => {
            let pi = read_permutation(&input)?;
            let n = pi.len();
            let (sorted, stats, trace) = match algo {
                AlgoArg::Shellsort | AlgoArg::Insertion => {
                    let seq = match algo {
                        AlgoArg::Insertion => IncrementSequence::validate(&[1], n)?,
                        _ => parse_gaps(gaps.as_deref(), n)?,
                    };
                    let run = shellsort(&pi, &seq)?;
                    let s = run.stats;
                    let per_pass: Vec<String> = s.per_pass_moves.iter().map(u64::to_string).collect();
                    let stats = vec![
                        ("gaps", seq.to_string()),
                        ("moves", s.moves.to_string()),
                        ("paper_comparisons", s.paper_comparisons.to_string()),
                        ("raw_comparisons", s.raw_comparisons.to_string()),
                        ("per_pass_moves", per_pass.join(" ")),
                    ];
                    (run.sorted, stats, Some(pass_trace_csv(&run.trace)?))
                }
                AlgoArg::Bubble => {
                    let (sorted, s) = bubble_sort(&pi);
                    let stats = vec![
                        ("exchanges", s.exchanges.to_string()),
                        ("comparisons", s.comparisons.to_string()),
                        ("passes_executed", s.passes_executed.to_string()),
                    ];
                    (sorted, stats, None)
                }
                AlgoArg::Pstack | AlgoArg::Pqueue => {
                    let (run, key) = match algo {
                        AlgoArg::Pstack => (parallel_stack_sort(&pi), "stacks_used"),
                        _ => (parallel_queue_sort(&pi), "queues_used"),
                    };
                    let trace = network_trace_csv(&run.trace)?;
                    (run.output, vec![(key, run.devices_used.to_string())], Some(trace))
                }
            };
            if let Some(path) = dump_trace {
                let text = trace.ok_or_else(|| LabError::Config("bubble sort has no trace to dump".into()))?;
                fs::write(path, text)?;
            }
            writeln!(out, "{sorted}")?;
            for (key, value) in stats {
                writeln!(out, "{key}={value}")?;
            }
        }
        Command::Minstacks { input, kmax } => {
            let pi = read_permutation(&input)?;
            match min_sequential_stacks(&pi, kmax)? {
                MinStacks::Found(k) => writeln!(out, "{k}")?,
                MinStacks::ExceedsMax => writeln!(out, ">{kmax}")?,
            }
        }
        Command::Bounds { table, n_grid, p } => {
            let grid = parse_n_grid(&n_grid)?;
            let passes: Vec<u64> = match table {
                TableArg::Shellsort => parse_int_list(&p)?.into_iter().map(|p| p as u64).collect(),
                _ => vec![0],
            };
            writeln!(out, "n,p,bound,rhs_bits")?;
            for &n in &grid {
                for &p in &passes {
                    let n = n as u64;
                    let r: BudgetResult = match table {
                        TableArg::Shellsort => shellsort_move_bound(n, p)?,
                        TableArg::Sequential => sequential_stack_bound(n)?,
                        TableArg::Parallel => parallel_device_bound(n)?,
                    };
                    if r.regime_warning {
                        eprintln!("warning: p = {p} exceeds log2(n) at n = {n}; bound stated only for p <= log2 n");
                    }
                    writeln!(out, "{n},{p},{},{:.3}", r.bound, r.rhs)?;
                }
            }
        }
        Command::Experiment { spec, out: json_path, csv, plot, workers, seed } => {
            let mut spec: ExperimentSpec = serde_json::from_str(&read_text(&spec)?)?;
            spec.seed = Some(resolve_seed(seed, spec.seed)?);
            let report = run_experiment(&spec, workers)?;
            fs::write(&json_path, report.to_json()?)?;
            if let Some(path) = csv {
                fs::write(path, report.to_csv()?)?;
            }
            if let Some(path) = plot {
                fs::write(path, report.plot_data())?;
            }
            for f in &report.fits {
                writeln!(
                    out,
                    "{} {} {}: slope {:.4} [{:.4}, {:.4}] r2 {:.5}",
                    f.algorithm,
                    f.family,
                    f.metric.as_str(),
                    f.fit.slope,
                    f.fit.slope_ci95.0,
                    f.fit.slope_ci95.1,
                    f.fit.r_squared
                )?;
            }
        }
        Command::Verify { seed } => {
            let seed = resolve_seed(seed, None)?;
            let ok = verify::run_all(seed, &mut out)?;
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_gaps(text: Option<&str>, n: usize) -> Result<IncrementSequence> {
    let text = text.ok_or_else(|| LabError::Config("--gaps is required".into()))?;
    Ok(IncrementSequence::validate(&parse_int_list(text)?, n)?)
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| LabError::Config(format!("{}: {e}", path.display())))
}

/// `--seed`, then the spec, then the environment, then the built-in default.
fn resolve_seed(flag: Option<u64>, spec: Option<u64>) -> Result<u64> {
    if let Some(s) = flag.or(spec) {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| LabError::Config(format!("{SEED_ENV}={text:?} is not a u64"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}
