//! Command-line front end: dataset ingestion, query configuration, operator
//! dispatch, the benchmark harness and plot-data emission.
//!
//! [`run`] is the whole program minus process exit, so it can be driven from
//! tests. Exit codes: 0 success, 2 usage or config error, 3 data error,
//! 4 internal error.

pub mod bench;
pub mod config;
pub mod error;
pub mod query;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::QueryConfig;
pub use error::CliError;
pub use report::{Counters, ResultReport, ResultTuple};

/// Bundled laptop dataset, raw values.
pub const LAPTOPS_CSV: &str = include_str!("../data/laptops.csv");
/// Schema of [`LAPTOPS_CSV`]: a lower price and a lower CPU figure are both preferred.
pub const LAPTOPS_SCHEMA: &str = "price:min, cpu:min";

#[derive(Debug, Parser)]
#[command(name = "flexsky", version, about = "Skyline, top-k and flexible-skyline queries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pareto skyline.
    Sky(QueryArgs),
    /// Top-k by a weighted scoring function (lowest scores first).
    Topk(QueryArgs),
    /// Fagin's Algorithm over one sorted list per attribute.
    Fa(QueryArgs),
    /// Threshold Algorithm over one sorted list per attribute.
    Ta(QueryArgs),
    /// ε-skyline.
    EpsSky(QueryArgs),
    /// Non-dominated tuples under constrained weights.
    Nd(QueryArgs),
    /// Potentially optimal tuples under constrained weights.
    Po(QueryArgs),
    /// Timing and counter table over an algorithm × N × d × c matrix.
    Bench(bench::BenchArgs),
    /// Write a synthetic dataset as CSV.
    Gen(GenArgs),
    /// Point sets (all, skyline, ε-skyline) as CSV for plotting.
    PlotData(PlotArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct QueryArgs {
    /// Query config file (`key = value` lines).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// CSV dataset whose first column is the tuple id. Defaults to the bundled laptops.
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Attribute directions, e.g. `price:min, cpu:max`.
    #[arg(long)]
    pub schema: Option<String>,
    #[arg(long)]
    pub algo: Option<String>,
    #[arg(short = 'k', long)]
    pub k: Option<usize>,
    /// Number of partitions for `nd` and `po`.
    #[arg(long)]
    pub parallel: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub eps_weights: Option<Vec<f64>>,
    #[arg(long)]
    pub strict_exists: Option<bool>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<f64>>,
    /// Weight constraint `a_1,...,a_d <= k` (or `>=`); repeatable.
    #[arg(long = "constraint", allow_hyphen_values = true)]
    pub constraints: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub transforms: Option<Vec<String>>,
    /// `min`, `avg` or `weighted` (FA/TA).
    #[arg(long)]
    pub aggregation: Option<String>,
    /// Use values as given instead of min-max normalizing them.
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(short = 'n', long)]
    pub n: usize,
    #[arg(short = 'd', long)]
    pub d: usize,
    #[arg(long, default_value = "uniform")]
    pub distribution: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output if absent.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    /// Output file; standard output if absent.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "flexsky: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Sky(q) => emit(out, &query::sky(&query::Query::resolve(&q)?)?),
        Command::Topk(q) => emit(out, &query::topk(&query::Query::resolve(&q)?)?),
        Command::Fa(q) => emit(out, &query::fagin(&query::Query::resolve(&q)?, false)?),
        Command::Ta(q) => emit(out, &query::fagin(&query::Query::resolve(&q)?, true)?),
        Command::EpsSky(q) => emit(out, &query::eps_sky(&query::Query::resolve(&q)?)?),
        Command::Nd(q) => emit(out, &query::nd(&query::Query::resolve(&q)?)?),
        Command::Po(q) => emit(out, &query::po(&query::Query::resolve(&q)?)?),
        Command::Bench(b) => bench::run(&b, out),
        Command::Gen(g) => gen(&g, out),
        Command::PlotData(p) => query::plot_data(&query::Query::resolve(&p.query)?, p.output.as_deref(), out),
    }
}

fn emit(out: &mut dyn Write, report: &ResultReport) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(report).map_err(|e| CliError::Internal(e.to_string()))?;
    error::output(writeln!(out, "{json}"))
}

/// CSV text of a relation: `id,<attribute names>` then one row per tuple.
pub fn relation_csv(rel: &flexsky_core::Relation) -> String {
    let mut s = String::from("id");
    for name in rel.schema().names() {
        s.push(',');
        s.push_str(name);
    }
    s.push('\n');
    for t in rel.tuples() {
        s.push_str(&t.id);
        for x in &t.values {
            s.push(',');
            s.push_str(&x.to_string());
        }
        s.push('\n');
    }
    s
}

fn gen(args: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.n == 0 || args.d == 0 {
        return Err(CliError::Config("gen needs n >= 1 and d >= 1".into()));
    }
    let dist: flexsky_core::Distribution = args.distribution.parse()?;
    let rel: flexsky_core::Relation = flexsky_core::generate(args.n, args.d, dist, args.seed)?;
    let text = relation_csv(&rel);
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display()))),
        None => error::output(out.write_all(text.as_bytes())),
    }
}
