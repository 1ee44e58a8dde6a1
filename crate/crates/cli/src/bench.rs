//! Benchmark harness: wall time and counters per algorithm × N × d × c cell.
//!
//! Each cell runs once as warm-up, then `trials` timed runs; the reported
//! time is the median. Counters come from the last run (they are
//! deterministic).

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use flexsky_core::synth::random_constraints;
use flexsky_core::{
    generate, normalize, Distribution, FlexFamily, NdAlgorithm, OpStats, PartitionPlan, PoAlgorithm, Relation,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{output, CliError};
use crate::query::{elapsed_ms, header_schema};

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// `nd` or `po`.
    #[arg(long, default_value = "nd")]
    pub op: String,
    /// Comma-separated algorithm names, or `all`.
    #[arg(long, default_value = "all")]
    pub algos: String,
    #[arg(long, value_delimiter = ',', default_value = "1000")]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub d: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub c: Vec<usize>,
    #[arg(long, default_value = "anticorrelated")]
    pub distribution: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long)]
    pub parallel: Option<usize>,
    /// Benchmark this CSV instead of synthetic data; `n` and `d` are then
    /// taken from the file.
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Output file; standard output if absent.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Nd(NdAlgorithm),
    Po(PoAlgorithm),
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Nd(a) => a.name(),
            Algo::Po(a) => a.name(),
        }
    }

    fn op(self) -> &'static str {
        match self {
            Algo::Nd(_) => "nd",
            Algo::Po(_) => "po",
        }
    }

    fn run(self, rel: &Relation, fam: &FlexFamily, plan: Option<PartitionPlan>) -> Result<(usize, OpStats), CliError> {
        let sel = match (self, plan) {
            (Algo::Nd(a), None) => flexsky_core::nd_selection(rel, fam, a)?,
            (Algo::Nd(a), Some(p)) => flexsky_core::parallel_nd_selection(rel, fam, a, p)?,
            (Algo::Po(a), None) => flexsky_core::po_selection(rel, fam, a)?,
            (Algo::Po(a), Some(p)) => flexsky_core::parallel_po_selection(rel, fam, a, p)?,
        };
        Ok((sel.indices.len(), sel.stats))
    }
}

pub fn algorithms(op: &str, list: &str) -> Result<Vec<Algo>, CliError> {
    let all = list.trim().eq_ignore_ascii_case("all");
    match op {
        "nd" if all => Ok(NdAlgorithm::ALL.into_iter().map(Algo::Nd).collect()),
        "po" if all => Ok(PoAlgorithm::ALL.into_iter().map(Algo::Po).collect()),
        "nd" => list.split(',').map(|s| Ok(Algo::Nd(s.parse()?))).collect(),
        "po" => list.split(',').map(|s| Ok(Algo::Po(s.parse()?))).collect(),
        other => Err(CliError::Config(format!("bench op must be `nd` or `po`, got `{other}`"))),
    }
}

/// One row of the bench table.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub op: &'static str,
    pub algo: &'static str,
    pub n: usize,
    pub d: usize,
    pub c: usize,
    pub result_size: usize,
    pub median_ms: f64,
    pub stats: OpStats,
}

pub const HEADER: &str =
    "op,algo,n,d,c,result_size,median_ms,pareto_tests,f_dominance_tests,po_tests,lp_solves";

impl Cell {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.3},{},{},{},{}",
            self.op,
            self.algo,
            self.n,
            self.d,
            self.c,
            self.result_size,
            self.median_ms,
            self.stats.pareto_tests,
            self.stats.f_dominance_tests,
            self.stats.po_tests,
            self.stats.lp_solves
        )
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

/// Times `algo` on one dataset: a warm-up run, then `trials` timed runs.
pub fn measure(
    algo: Algo,
    rel: &Relation,
    fam: &FlexFamily,
    c: usize,
    trials: usize,
    plan: Option<PartitionPlan>,
) -> Result<Cell, CliError> {
    algo.run(rel, fam, plan)?;
    let mut times = Vec::with_capacity(trials);
    let mut last = (0, OpStats::default());
    for _ in 0..trials.max(1) {
        let started = Instant::now();
        last = algo.run(rel, fam, plan)?;
        times.push(elapsed_ms(started));
    }
    Ok(Cell {
        op: algo.op(),
        algo: algo.name(),
        n: rel.len(),
        d: rel.dims(),
        c,
        result_size: last.0,
        median_ms: median(times),
        stats: last.1,
    })
}

/// Cells for every (n, d, c, algorithm) combination, in that nesting order.
pub fn matrix(args: &BenchArgs) -> Result<Vec<Cell>, CliError> {
    let algos = algorithms(&args.op, &args.algos)?;
    let dist: Distribution = args.distribution.parse()?;
    let plan = args.parallel.map(PartitionPlan::new).transpose()?;
    let datasets: Vec<Relation> = match &args.dataset {
        Some(path) => {
            let raw: Relation = flexsky_core::load_csv(path, header_schema(path)?)?;
            vec![normalize(&raw)]
        }
        None => {
            let mut out = Vec::new();
            for &n in &args.n {
                for &d in &args.d {
                    if n == 0 || d == 0 {
                        return Err(CliError::Config("bench needs n >= 1 and d >= 1".into()));
                    }
                    out.push(generate(n, d, dist, args.seed)?);
                }
            }
            out
        }
    };
    let mut cells = Vec::new();
    for rel in &datasets {
        for &c in &args.c {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed ^ ((c as u64) << 32));
            let fam = FlexFamily::linear(random_constraints(rel.dims(), c, &mut rng)?)?;
            for &algo in &algos {
                cells.push(measure(algo, rel, &fam, c, args.trials, plan)?);
            }
        }
    }
    Ok(cells)
}

pub fn run(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cells = matrix(args)?;
    let mut text = String::from(HEADER);
    text.push('\n');
    for cell in &cells {
        text.push_str(&cell.csv_row());
        text.push('\n');
    }
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display()))),
        None => output(out.write_all(text.as_bytes())),
    }
}
