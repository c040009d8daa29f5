use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use cyclo_height::conjectures::{self, CheckOptions, ConjectureId, ConjectureReport, Verdict};
use cyclo_height::search::{compute, Measure, SearchOptions, DEFAULT_DIVISOR_BUDGET, DEFAULT_WITNESS_CAP};
use cyclo_height::selftest;
use cyclo_height::store::{load_records, run_range};
use cyclo_height::table::{records_table, reports_table, sweep_summary, Shape, Table};

/// Maximal coefficient heights of divisors of x^n - 1.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute B(n) or C(n).
    Compute {
        n: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Compute every n in lo..=hi, appending to a checkpoint file.
    Range {
        lo: u64,
        hi: u64,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        checkpoint: PathBuf,
    },
    /// Check a conjecture for one parameter tuple, or sweep it with --upto.
    Verify {
        id: ConjectureId,
        params: Vec<u64>,
        /// Check every admissible instance with n <= this bound.
        #[arg(long)]
        upto: Option<u64>,
        /// Allow the published closed forms instead of exhaustive search.
        #[arg(long)]
        closed_form: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        csv: bool,
    },
    /// Tabulate a record file.
    Table {
        #[arg(long)]
        input: PathBuf,
        /// all, pk, pq, p2q, p2q2, paqb or pqr.
        #[arg(long, default_value = "all")]
        shape: Shape,
        #[arg(long)]
        csv: bool,
    },
    /// Run the identity, prefix-product and oracle-equivalence suites.
    Selftest,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value = "B")]
    measure: Measure,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
    witness_cap: usize,
    #[arg(long)]
    no_closed_form: bool,
    #[arg(long)]
    force_bigint: bool,
    #[arg(long, default_value_t = DEFAULT_DIVISOR_BUDGET)]
    divisor_budget: usize,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            jobs: self.jobs,
            witness_cap: self.witness_cap,
            allow_closed_form: !self.no_closed_form,
            force_bigint: self.force_bigint,
            divisor_budget: self.divisor_budget,
        }
    }
}

fn print_table(t: &Table, csv: bool) {
    if csv {
        print!("{}", t.to_csv());
    } else {
        print!("{}", t.to_text());
    }
}

fn cmd_compute(n: u64, args: &SearchArgs) -> Result<ExitCode> {
    let r = compute(n, args.measure, &args.options())?;
    println!("{}({}) = {}", r.measure, r.n, r.value);
    println!("n = {}", r.factorization);
    println!("method: {:?}", r.method);
    println!("maximizing subsets: {}", r.witness_total);
    for w in &r.witnesses {
        println!("  {w:?}");
    }
    println!("nodes visited: {}", r.nodes_visited);
    if r.escalated {
        println!("arbitrary precision was needed");
    }
    println!("elapsed: {:.3?}", r.elapsed);
    Ok(ExitCode::SUCCESS)
}

fn cmd_range(lo: u64, hi: u64, args: &SearchArgs, checkpoint: &Path) -> Result<ExitCode> {
    let s = run_range(lo, hi, args.measure, &args.options(), checkpoint)
        .with_context(|| format!("range {lo}..={hi} into {}", checkpoint.display()))?;
    println!(
        "computed {}, skipped {}, already present {}",
        s.computed, s.skipped, s.reused
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    id: ConjectureId,
    params: &[u64],
    upto: Option<u64>,
    closed_form: bool,
    jobs: Option<usize>,
    csv: bool,
) -> Result<ExitCode> {
    let mut opts = CheckOptions::default();
    opts.search.allow_closed_form = closed_form;
    if let Some(j) = jobs {
        opts.search.jobs = j;
    }
    let reports: Vec<ConjectureReport> = match upto {
        Some(limit) => {
            if !params.is_empty() {
                bail!("--upto takes no positional parameters");
            }
            let reports = conjectures::sweep(id, limit, &opts)?;
            print_table(&sweep_summary(id, &format!("n <= {limit}"), &reports), csv);
            if !csv {
                if let Some(tally) = conjectures::parity_tally(&reports) {
                    println!("{tally}");
                }
                println!();
            }
            reports
        }
        None => vec![conjectures::check(id, params, &opts)?],
    };
    let shown: Vec<ConjectureReport> = if upto.is_some() {
        reports
            .iter()
            .filter(|r| r.verdict == Verdict::Fails)
            .cloned()
            .collect()
    } else {
        reports.clone()
    };
    if !shown.is_empty() {
        print_table(&reports_table(&shown), csv);
    }
    let failed = reports.iter().any(|r| r.verdict == Verdict::Fails);
    Ok(if failed { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn cmd_table(input: &Path, shape: Shape, csv: bool) -> Result<ExitCode> {
    let set = load_records(input).with_context(|| format!("reading {}", input.display()))?;
    let t = records_table(&set, shape)?;
    print_table(&t, csv);
    let mismatch = t
        .rows
        .iter()
        .any(|r| r.last().is_some_and(|c| c == "NO" || c == "NEITHER"));
    Ok(if mismatch { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn cmd_selftest() -> Result<ExitCode> {
    let mut ok = true;
    for s in selftest::run_all() {
        ok &= s.passed();
        let status = if s.passed() { "pass" } else { "FAIL" };
        println!("{status}  {:<20} {:>6} cases  {:.2?}", s.name, s.cases, s.elapsed);
        if let Some(f) = &s.failure {
            println!("      {f}");
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute { n, search } => cmd_compute(*n, search),
        Command::Range {
            lo,
            hi,
            search,
            checkpoint,
        } => cmd_range(*lo, *hi, search, checkpoint),
        Command::Verify {
            id,
            params,
            upto,
            closed_form,
            jobs,
            csv,
        } => cmd_verify(*id, params, *upto, *closed_form, *jobs, *csv),
        Command::Table { input, shape, csv } => cmd_table(input, *shape, *csv),
        Command::Selftest => cmd_selftest(),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
