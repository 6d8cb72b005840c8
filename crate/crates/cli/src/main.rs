use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use permcensus::stats::{probability, sandwich_bounds};
use permcensus::{
    coset_size, identify, BlackBox, Census, Count, CosetQuery, Error, ExactRatio, Oracle,
    OracleLimits, OrderSample, StatKind,
};

/// Exact counts of symmetric-group elements by order and cycle statistics.
///
/// Statistics: om, od, oe (order a multiple of / dividing / equal to q),
/// cm, cd, ce (some cycle length a multiple of / dividing / equal to q),
/// and their complements nom, nod, noe, ncm, ncd, nce.
#[derive(Debug, Parser)]
#[command(name = "permcensus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count elements of the coset C(n, k) satisfying a statistic.
    Count {
        #[arg(long)]
        stat: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        k: u64,
    },
    /// Tabulate a statistic for n = 1..=n-max (and every k with --cosets).
    Table {
        #[arg(long)]
        stat: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        /// One row per coset C(n, k) instead of one per S_n.
        #[arg(long)]
        cosets: bool,
        /// Worker threads for rendering rows (default 1).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Exact proportion of S_n satisfying a statistic.
    Prob {
        #[arg(long)]
        stat: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
    },
    /// Analytic bounds on the proportion of S_{mq} with no cycle length divisible by q.
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
    },
    /// Compare the recurrences with brute-force enumeration.
    OracleCheck {
        #[arg(long, default_value_t = 8)]
        q_max: u64,
        #[arg(long, default_value_t = 8)]
        n_max: u64,
    },
    /// Estimate the degree of a symmetric group from element orders.
    Identify {
        /// Degree of the simulated group.
        #[arg(long, conflicts_with = "orders", required_unless_present = "orders")]
        n_hidden: Option<usize>,
        /// Number of simulated samples.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, env = "PERMCENSUS_SEED")]
        seed: Option<u64>,
        /// File of element orders, one decimal integer per line.
        #[arg(long)]
        orders: Option<PathBuf>,
        /// Largest degree considered.
        #[arg(long, default_value_t = 1_000)]
        n_max: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Debug)]
enum CliError {
    UnknownStat(String),
    OutOfRange(String),
    File(String),
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::UnknownStat(_) => 3,
            CliError::OutOfRange(_) => 4,
            CliError::File(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::UnknownStat(m) | CliError::OutOfRange(m) | CliError::File(m) | CliError::Mismatch(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownStat(s) => CliError::UnknownStat(format!(
                "unknown statistic {s:?}; expected one of om nom od nod oe noe cm ncm cd ncd ce nce"
            )),
            Error::InvalidOrderLine { .. } | Error::EmptySample | Error::ZeroOrder => {
                CliError::File(e.to_string())
            }
            other => CliError::OutOfRange(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn parse_stat(s: &str) -> CliResult<StatKind> {
    Ok(s.parse::<StatKind>()?)
}

#[derive(Debug, Serialize)]
struct Record {
    stat: String,
    q: u64,
    n: u64,
    k: u64,
    count: String,
    size: String,
    fraction: String,
}

impl Record {
    fn new(kind: StatKind, q: u64, n: u64, k: u64, count: &Count, size: &Count) -> Self {
        Record {
            stat: kind.name(),
            q,
            n,
            k,
            count: count.to_string(),
            size: size.to_string(),
            fraction: ExactRatio::new(count.clone(), size.clone()).to_string(),
        }
    }

    fn tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.stat, self.q, self.n, self.k, self.count, self.size, self.fraction
        )
    }
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Count { stat, q, n, k } => {
            let kind = parse_stat(&stat)?;
            let query = CosetQuery::new(kind, q, n, k)?;
            Ok(format!("{}\n", Census::new().stat_count(&query)))
        }
        Command::Table { stat, q, n_max, format, cosets, jobs } => {
            table(parse_stat(&stat)?, q, n_max, format, cosets, jobs)
        }
        Command::Prob { stat, q, n } => {
            let kind = parse_stat(&stat)?;
            let p = probability(&mut Census::new(), kind, q, n)?;
            Ok(format!("{p} ≈ {}\n", p.to_decimal(6)))
        }
        Command::Bounds { q, m } => {
            let r = sandwich_bounds(q, m)?;
            let mut out = String::new();
            let _ = writeln!(out, "q: {}", r.q);
            let _ = writeln!(out, "m: {}", r.m);
            let _ = writeln!(out, "c_q: {:.17e}", r.c_q);
            let _ = writeln!(out, "lower: {:.17e}", r.lower);
            let _ = writeln!(out, "exact: {}", r.exact);
            let _ = writeln!(out, "exact_decimal: {}", r.exact.to_decimal(6));
            let _ = writeln!(out, "upper: {:.17e}", r.upper);
            let _ = writeln!(out, "brackets: {}", r.brackets());
            Ok(out)
        }
        Command::OracleCheck { q_max, n_max } => oracle_check(q_max, n_max),
        Command::Identify { n_hidden, samples, seed, orders, n_max } => {
            let sample = match (orders, n_hidden) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| CliError::File(format!("{}: {e}", path.display())))?;
                    OrderSample::parse(&text)?
                }
                (None, Some(n)) => {
                    if samples == 0 {
                        return Err(CliError::OutOfRange("--samples must be positive".into()));
                    }
                    BlackBox::new(n, seed.unwrap_or(0))?.sample_orders(samples)?
                }
                (None, None) => unreachable!("clap requires one of --orders, --n-hidden"),
            };
            let estimate = identify(&mut Census::new(), &sample, n_max)?;
            let json = serde_json::to_string_pretty(&estimate).expect("estimate serializes");
            Ok(json + "\n")
        }
    }
}

fn table(
    kind: StatKind,
    q: u64,
    n_max: u64,
    format: Format,
    cosets: bool,
    jobs: Option<usize>,
) -> CliResult<String> {
    if n_max == 0 {
        return Err(CliError::OutOfRange("--n-max must be positive".into()));
    }
    CosetQuery::new(kind, q, n_max, 1)?;
    let mut census = Census::new();
    let mut cells = Vec::new();
    for n in 1..=n_max {
        let ks = if cosets { 1..=n } else { 1..=1 };
        for k in ks {
            let query = CosetQuery::new(kind, q, n, k)?;
            cells.push((n, k, census.stat_count(&query)));
        }
    }
    // decimal conversion of large counts dominates; render rows in parallel, keep order
    let render = || -> Vec<String> {
        cells
            .par_iter()
            .map(|(n, k, count)| {
                let size = coset_size(*n, *k).expect("validated above");
                let record = Record::new(kind, q, *n, *k, count, &size);
                match format {
                    Format::Tsv => record.tsv(),
                    Format::Json => serde_json::to_string(&record).expect("record serializes"),
                }
            })
            .collect()
    };
    let rows = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(1).max(1))
        .build()
        .map_err(|e| CliError::OutOfRange(e.to_string()))?
        .install(render);
    let mut out = String::new();
    match format {
        Format::Tsv => {
            out.push_str("stat\tq\tn\tk\tcount\tsize\tfraction\n");
            for row in rows {
                out.push_str(&row);
                out.push('\n');
            }
        }
        Format::Json => {
            out.push_str("[\n");
            let last = rows.len() - 1;
            for (i, row) in rows.into_iter().enumerate() {
                out.push_str(&row);
                out.push_str(if i == last { "\n" } else { ",\n" });
            }
            out.push_str("]\n");
        }
    }
    Ok(out)
}

fn oracle_check(q_max: u64, n_max: u64) -> CliResult<String> {
    let limits = OracleLimits::default();
    if q_max == 0 || n_max == 0 {
        return Err(CliError::OutOfRange("--q-max and --n-max must be positive".into()));
    }
    if n_max > limits.coset_points {
        return Err(CliError::OutOfRange(format!(
            "--n-max {n_max} exceeds the enumeration limit {}",
            limits.coset_points
        )));
    }
    let mut census = Census::new();
    let mut oracle = Oracle::new(limits);
    let mut checks = 0u64;
    for kind in StatKind::all() {
        for q in 1..=q_max {
            for n in 1..=n_max {
                for k in 1..=n {
                    let fast = census.count(kind, q, n, k)?;
                    let brute = oracle.coset(kind, q, n, k)?;
                    checks += 1;
                    if fast != brute {
                        return Err(CliError::Mismatch(format!(
                            "mismatch: {kind} q={q} n={n} k={k}: recurrence {fast}, enumeration {brute}"
                        )));
                    }
                    if k == 1 {
                        let classes = oracle.sym(kind, q, n)?;
                        checks += 1;
                        if fast != classes {
                            return Err(CliError::Mismatch(format!(
                                "mismatch: {kind} q={q} n={n}: recurrence {fast}, class sum {classes}"
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("ok: {checks} checks, q <= {q_max}, n <= {n_max}\n"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("permcensus: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
