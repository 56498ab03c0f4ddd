//! Command-line front end: enumeration, census-file verification, entropy
//! checks, and the exact bounds table.
//!
//! Exit codes: 0 on success, 1 when a verification fails (an axiom
//! violation in a census file, or any bound row that does not hold),
//! 2 on usage errors, out-of-range parameters, or unreadable paths.
//!
//! All output is deterministic for a fixed command line, including across
//! worker counts; nothing derived from timing or thread identity is ever
//! printed.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use matroid_census::*;
use num_bigint::BigUint;
use serde_json::json;

/// Environment variable supplying the default worker count.
const WORKERS_VAR: &str = "MATROID_CENSUS_WORKERS";

/// The rank2 cross-check walks all B(n+1) partition objects.
const RANK2_MAX_N: usize = 10;

#[derive(Parser)]
#[command(
    name = "matroid-census",
    version,
    about = "Enumerate matroids on small labeled ground sets and verify the counting bounds",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 usage or input error.\n\
                  MATROID_CENSUS_WORKERS sets the default worker count."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Scan all 2^C(n,r) bit vectors against the axiom checker
    Naive,
    /// Pruned depth-first search (default)
    Dfs,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the (n, r) census and write it to stdout or a file
    Census {
        /// Ground set size
        #[arg(long)]
        n: usize,
        /// Rank
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Dfs)]
        method: MethodArg,
        /// Destination path; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for the pruned search
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Tabulate m(n,r) and the totals m(n) for all n up to a limit
    Counts {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Re-validate a census file: syntax, empty family first, axiom per row
    Verify {
        /// Census file to check
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check the covering inequality on the (n, r) census with class size t
    Shearer {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Cross-check census(n,2) against the loops-plus-partition count
    Rank2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Verify every counting bound over enumerated censuses up to max-n
    Bounds {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Print the descriptive asymptotic comparison table (non-normative)
    Report {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn resolve_workers(flag: Option<usize>) -> anyhow::Result<usize> {
    let workers = match flag {
        Some(w) => w,
        None => match std::env::var(WORKERS_VAR) {
            Ok(value) => value
                .trim()
                .parse()
                .with_context(|| format!("{WORKERS_VAR} must be a positive integer, got {value:?}"))?,
            Err(std::env::VarError::NotPresent) => {
                std::thread::available_parallelism().map_or(1, |w| w.get())
            }
            Err(err) => bail!("{WORKERS_VAR}: {err}"),
        },
    };
    if workers == 0 {
        bail!("worker count must be at least 1");
    }
    Ok(workers)
}

fn main() -> ExitCode {
    // clap exits 2 on unparseable arguments and 0 for --help/--version.
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Census { n, r, method, out, workers } => {
            let workers = resolve_workers(workers)?;
            let census = match method {
                MethodArg::Naive => enumerate_naive(n, r)?,
                MethodArg::Dfs => enumerate_dfs_with_workers(n, r, workers)?,
            };
            match out {
                Some(path) => write_census(&path, &census)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => {
                    let stdout = std::io::stdout().lock();
                    let mut w = std::io::BufWriter::new(stdout);
                    write_census_to(&mut w, &census)?;
                    w.flush()?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Counts { max_n, workers } => {
            let workers = resolve_workers(workers)?;
            let table = count_all_with_workers(max_n, workers)?;
            let mut entries = Vec::new();
            let mut totals = Vec::new();
            for n in 0..=max_n {
                for r in 0..=n {
                    entries.push(json!({
                        "n": n,
                        "r": r,
                        "count": table.rank_count(n, r)?.to_string(),
                    }));
                }
                let (max_rank, max_count) = table.max_rank_count(n)?;
                totals.push(json!({
                    "n": n,
                    "total": table.total(n)?.to_string(),
                    "max_rank": max_rank,
                    "max_count": max_count.to_string(),
                }));
            }
            let doc = json!({ "max_n": max_n, "entries": entries, "totals": totals });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input } => {
            let census = parse_census(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let mut failures = 0usize;
            if census.bit_vectors().first() != Some(&0) {
                println!("line 2: census must begin with the empty family (all-zero row)");
                failures += 1;
            }
            for (i, family) in census.families().enumerate() {
                if let Some(witness) = family.exchange_witness() {
                    println!("line {}: {witness}", i + 2);
                    failures += 1;
                }
            }
            if failures == 0 {
                println!("all {} families valid", census.len());
                Ok(ExitCode::SUCCESS)
            } else {
                println!("{failures} of {} rows invalid", census.len());
                Ok(ExitCode::from(1))
            }
        }
        Command::Shearer { n, r, t, workers } => {
            let workers = resolve_workers(workers)?;
            let census = enumerate_dfs_with_workers(n, r, workers)?;
            let check = shearer_check(&census, t)?;
            let doc = json!({
                "n": check.n,
                "r": check.r,
                "t": check.t,
                "lhs_bits": check.lhs_bits,
                "rhs_bits": check.rhs_bits,
                "multiplicity": check.multiplicity,
                "class_count": check.class_count,
                "tolerance": check.tolerance,
                "holds": check.holds,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(if check.holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Rank2 { n, workers } => {
            let workers = resolve_workers(workers)?;
            if n > RANK2_MAX_N {
                bail!("rank2 cross-check supports n <= {RANK2_MAX_N}: the partition oracle walks all B(n+1) partitions");
            }
            let census = enumerate_dfs_with_workers(n, 2, workers)?;
            let mut round_trips_ok = true;
            for family in census.families() {
                let decomposition = decompose_rank2(&family)?;
                if compose_rank2(n, &decomposition)? != family {
                    round_trips_ok = false;
                    break;
                }
            }
            // Independent count: non-empty families correspond to a loop set
            // plus a partition of the rest into at least two classes.
            let mut partition_count = BigUint::from(1u32);
            for loops in 0..1u32 << n {
                let rest: Vec<usize> = (0..n).filter(|e| loops >> e & 1 == 0).collect();
                partition_count += enumerate_partitions(&rest)
                    .filter(|p| p.block_count() >= 2)
                    .count();
            }
            let counts_match = BigUint::from(census.len()) == partition_count;
            let holds = round_trips_ok && counts_match;
            let doc = json!({
                "n": n,
                "rows": census.len(),
                "partition_count": partition_count.to_string(),
                "round_trips_ok": round_trips_ok,
                "counts_match": counts_match,
                "holds": holds,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Bounds { max_n, format, workers } => {
            let workers = resolve_workers(workers)?;
            let table = count_all_with_workers(max_n, workers)?;
            let report = full_report_from(&table)?;
            match format {
                FormatArg::Json => {
                    let rows: Vec<_> = report.rows().iter().map(bound_row_json).collect();
                    let doc = json!({
                        "max_n": report.max_n(),
                        "all_hold": report.all_hold(),
                        "rows": rows,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
                FormatArg::Csv => {
                    let stdout = std::io::stdout().lock();
                    let mut w = std::io::BufWriter::new(stdout);
                    writeln!(w, "name,n,r,t,lhs,rhs,holds,slack")?;
                    for row in report.rows() {
                        writeln!(
                            w,
                            "{},{},{},{},{},{},{},{}",
                            row.name,
                            row.n,
                            row.r.map_or(String::new(), |r| r.to_string()),
                            row.t.map_or(String::new(), |t| t.to_string()),
                            row.lhs,
                            row.rhs,
                            row.holds,
                            row.slack(),
                        )?;
                    }
                    w.flush()?;
                }
            }
            Ok(if report.all_hold() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Report { max_n, workers } => {
            let workers = resolve_workers(workers)?;
            let table = count_all_with_workers(max_n, workers)?;
            let rows: Vec<_> = asymptotic_report(&table)?
                .into_iter()
                .map(|row| {
                    json!({
                        "n": row.n,
                        "total": row.total.to_string(),
                        "log_log_total": row.log_log_total,
                        "shape": row.shape,
                    })
                })
                .collect();
            let doc = json!({
                "max_n": max_n,
                "note": "non-normative: finite comparisons cannot confirm or refute an O(1) asymptotic statement",
                "rows": rows,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn bound_row_json(row: &BoundRow) -> serde_json::Value {
    json!({
        "name": row.name,
        "n": row.n,
        "r": row.r,
        "t": row.t,
        "lhs": row.lhs.to_string(),
        "rhs": row.rhs.to_string(),
        "relation": match row.relation {
            Relation::Le => "le",
            Relation::Eq => "eq",
        },
        "holds": row.holds,
        "slack": row.slack().to_string(),
        "interpretation": row.interpretation,
    })
}
