//! Operator commands over a resolved dataset and configuration.

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use flexsky_core::{
    eps_skyline_selection, normalize, parallel_nd_selection, parallel_po_selection, read_csv, skyline_selection,
    topk_scan, Aggregation, ConstraintSet, EpsilonSpec, FlexFamily, LinearConstraint, NdAlgorithm, OpStats,
    PartitionPlan, PoAlgorithm, Relation, Schema, ScoringFunction, Selection, SortedList, Transform, WeightVector,
};

use crate::config::QueryConfig;
use crate::error::{output, CliError};
use crate::report::{ResultReport, ResultTuple};
use crate::{QueryArgs, LAPTOPS_CSV, LAPTOPS_SCHEMA};

pub const DEFAULT_ND: NdAlgorithm = NdAlgorithm::Sve1f;
pub const DEFAULT_PO: PoAlgorithm = PoAlgorithm::Podf2;
/// Laptop ε at which the ε-skyline first has two tuples is 2/9; `plot-data`
/// uses this value when none is given.
pub const DEFAULT_PLOT_EPSILON: f64 = 0.25;

/// Dataset as read (`raw`) and as queried (`rel`, normalized unless `--raw`).
pub struct Query {
    pub cfg: QueryConfig,
    pub raw: Relation,
    pub rel: Relation,
}

/// Flags take precedence over config values.
fn merge(args: &QueryArgs) -> Result<QueryConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => QueryConfig::load(path)?,
        None => QueryConfig::default(),
    };
    macro_rules! over {
        ($($f:ident),*) => { $( if args.$f.is_some() { cfg.$f = args.$f.clone(); } )* };
    }
    over!(dataset, schema, algo, k, parallel, epsilon, eps_weights, strict_exists, weights, transforms, aggregation);
    cfg.constraints.extend(args.constraints.iter().cloned());
    if args.raw {
        cfg.normalize = Some(false);
    }
    Ok(cfg)
}

/// All-minimizing schema named after the CSV header (minus the id column).
pub fn header_schema(path: &Path) -> Result<Schema, CliError> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    let header = reader
        .headers()
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    let names: Vec<String> = header.iter().skip(1).map(|s| s.trim().to_string()).collect();
    if names.is_empty() {
        return Err(CliError::Data(format!("{}: no attribute columns", path.display())));
    }
    let dirs = vec![flexsky_core::Direction::Min; names.len()];
    Ok(Schema::new(names, dirs)?)
}

impl Query {
    pub fn resolve(args: &QueryArgs) -> Result<Self, CliError> {
        Self::from_config(merge(args)?)
    }

    pub fn from_config(cfg: QueryConfig) -> Result<Self, CliError> {
        let raw: Relation = match &cfg.dataset {
            Some(path) => {
                let schema = match &cfg.schema {
                    Some(s) => Schema::parse(s)?,
                    None => header_schema(path)?,
                };
                flexsky_core::load_csv(path, schema)?
            }
            None => {
                let schema = Schema::parse(cfg.schema.as_deref().unwrap_or(LAPTOPS_SCHEMA))?;
                read_csv(LAPTOPS_CSV.as_bytes(), schema)?
            }
        };
        let rel = if cfg.normalize.unwrap_or(true) {
            normalize(&raw)
        } else {
            raw.clone()
        };
        Ok(Self { cfg, raw, rel })
    }

    pub fn dims(&self) -> usize {
        self.rel.dims()
    }

    pub fn transforms(&self) -> Result<Vec<Transform>, CliError> {
        match &self.cfg.transforms {
            None => Ok(vec![Transform::Identity; self.dims()]),
            Some(list) => {
                if list.len() != self.dims() {
                    return Err(CliError::Config(format!(
                        "{} transforms for {} attributes",
                        list.len(),
                        self.dims()
                    )));
                }
                list.iter()
                    .map(|s| Transform::from_str(s).map_err(CliError::from))
                    .collect()
            }
        }
    }

    pub fn constraint_set(&self) -> Result<ConstraintSet, CliError> {
        let rows = self
            .cfg
            .constraints
            .iter()
            .map(|s| LinearConstraint::from_str(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ConstraintSet::new(self.dims(), rows)?)
    }

    pub fn family(&self) -> Result<FlexFamily, CliError> {
        Ok(FlexFamily::new(self.transforms()?, self.constraint_set()?)?)
    }

    fn weights(&self) -> Result<Vec<f64>, CliError> {
        self.cfg
            .weights
            .clone()
            .ok_or_else(|| CliError::Config("missing `weights`".into()))
    }

    fn plan(&self) -> Result<Option<PartitionPlan>, CliError> {
        self.cfg.parallel.map(PartitionPlan::new).transpose().map_err(Into::into)
    }

    fn report(&self, operator: &str, algorithm: Option<String>, sel: &Selection, started: Instant) -> ResultReport {
        ResultReport {
            operator: operator.into(),
            algorithm,
            partitions: self.cfg.parallel,
            count: sel.indices.len(),
            result: sel
                .indices
                .iter()
                .map(|&i| ResultTuple::new(&self.raw.tuples()[i], None))
                .collect(),
            wall_time_ms: elapsed_ms(started),
            counters: sel.stats.into(),
        }
    }
}

pub fn elapsed_ms(started: Instant) -> f64 {
    started.elapsed().as_secs_f64() * 1e3
}

pub fn sky(q: &Query) -> Result<ResultReport, CliError> {
    let started = Instant::now();
    let sel = skyline_selection(&q.rel);
    Ok(q.report("sky", Some("BNL".into()), &sel, started))
}

pub fn eps_sky(q: &Query) -> Result<ResultReport, CliError> {
    let eps = q
        .cfg
        .epsilon
        .ok_or_else(|| CliError::Config("missing `epsilon`".into()))?;
    let spec = eps_spec(q, eps)?;
    let started = Instant::now();
    let sel = eps_skyline_selection(&q.rel, &spec)?;
    Ok(q.report("eps-sky", None, &sel, started))
}

fn eps_spec(q: &Query, eps: f64) -> Result<EpsilonSpec, CliError> {
    let strict = q.cfg.strict_exists.unwrap_or(false);
    Ok(match &q.cfg.eps_weights {
        Some(w) => EpsilonSpec::new(w.clone(), eps, strict)?,
        None => EpsilonSpec::unit(q.dims(), eps, strict)?,
    })
}

pub fn topk(q: &Query) -> Result<ResultReport, CliError> {
    let k = q.cfg.k.unwrap_or(1);
    let f = ScoringFunction::new(WeightVector::new(q.weights()?)?, q.transforms()?)?;
    let started = Instant::now();
    let ranked = topk_scan(&q.rel, &f, k)?;
    let wall = elapsed_ms(started);
    let index: HashMap<&str, usize> = q.rel.tuples().iter().enumerate().map(|(i, t)| (t.id.as_str(), i)).collect();
    let result: Vec<ResultTuple> = ranked
        .iter()
        .map(|(t, s)| ResultTuple::new(&q.raw.tuples()[index[t.id.as_str()]], Some(*s)))
        .collect();
    Ok(ResultReport {
        operator: "topk".into(),
        algorithm: Some("scan".into()),
        partitions: None,
        count: result.len(),
        result,
        wall_time_ms: wall,
        counters: OpStats::default().into(),
    })
}

fn aggregation(q: &Query) -> Result<Aggregation<f64>, CliError> {
    match (q.cfg.aggregation.as_deref(), &q.cfg.weights) {
        (Some("min"), _) => Ok(Aggregation::Min),
        (Some("avg"), _) | (None, None) => Ok(Aggregation::Avg),
        (Some("weighted"), None) => Err(CliError::Config("`weighted` aggregation needs `weights`".into())),
        (Some("weighted") | None, Some(w)) => Ok(Aggregation::weighted(w.clone())?),
        (Some(other), _) => Err(CliError::Config(format!("unknown aggregation `{other}`"))),
    }
}

/// FA or TA with one list per attribute, graded `1 - normalized value`.
pub fn fagin(q: &Query, threshold: bool) -> Result<ResultReport, CliError> {
    if q.rel.tuples().iter().flat_map(|t| &t.values).any(|x| !(0.0..=1.0).contains(x)) {
        return Err(CliError::Data("FA/TA need values in [0,1]; drop --raw".into()));
    }
    let k = q.cfg.k.unwrap_or(1);
    let agg = aggregation(q)?;
    let lists = (0..q.dims())
        .map(|a| SortedList::from_relation(&q.rel, a))
        .collect::<Result<Vec<_>, _>>()?;
    let started = Instant::now();
    let top = if threshold {
        flexsky_core::ta(&lists, &agg, k)?
    } else {
        flexsky_core::fa(&lists, &agg, k)?
    };
    let wall = elapsed_ms(started);
    let index: HashMap<&str, usize> = q.raw.tuples().iter().enumerate().map(|(i, t)| (t.id.as_str(), i)).collect();
    let result: Vec<ResultTuple> = top
        .items
        .iter()
        .map(|o| ResultTuple::new(&q.raw.tuples()[index[o.id.as_str()]], Some(o.grade)))
        .collect();
    Ok(ResultReport {
        operator: if threshold { "ta" } else { "fa" }.into(),
        algorithm: None,
        partitions: None,
        count: result.len(),
        result,
        wall_time_ms: wall,
        counters: top.stats.into(),
    })
}

pub fn nd(q: &Query) -> Result<ResultReport, CliError> {
    let algo: NdAlgorithm = match &q.cfg.algo {
        Some(a) => a.parse()?,
        None => DEFAULT_ND,
    };
    let fam = q.family()?;
    let plan = q.plan()?;
    let started = Instant::now();
    let sel = match plan {
        Some(plan) => parallel_nd_selection(&q.rel, &fam, algo, plan)?,
        None => flexsky_core::nd_selection(&q.rel, &fam, algo)?,
    };
    Ok(q.report("nd", Some(algo.name().into()), &sel, started))
}

pub fn po(q: &Query) -> Result<ResultReport, CliError> {
    let algo: PoAlgorithm = match &q.cfg.algo {
        Some(a) => a.parse()?,
        None => DEFAULT_PO,
    };
    let fam = q.family()?;
    let plan = q.plan()?;
    let started = Instant::now();
    let sel = match plan {
        Some(plan) => parallel_po_selection(&q.rel, &fam, algo, plan)?,
        None => flexsky_core::po_selection(&q.rel, &fam, algo)?,
    };
    Ok(q.report("po", Some(algo.name().into()), &sel, started))
}

/// CSV `set,id,<attributes>` with the sets `all`, `sky` and `eps_sky`, in raw
/// values. Written to `path` (with a count summary on `out`) or to `out`.
pub fn plot_data(q: &Query, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = eps_spec(q, q.cfg.epsilon.unwrap_or(DEFAULT_PLOT_EPSILON))?;
    let all: Vec<usize> = (0..q.rel.len()).collect();
    let sky = skyline_selection(&q.rel).indices;
    let eps = eps_skyline_selection(&q.rel, &spec)?.indices;

    let mut csv = String::from("set,id");
    for name in q.raw.schema().names() {
        csv.push(',');
        csv.push_str(name);
    }
    csv.push('\n');
    for (set, idx) in [("all", &all), ("sky", &sky), ("eps_sky", &eps)] {
        for &i in idx {
            let t = &q.raw.tuples()[i];
            csv.push_str(set);
            csv.push(',');
            csv.push_str(&t.id);
            for x in &t.values {
                csv.push(',');
                csv.push_str(&x.to_string());
            }
            csv.push('\n');
        }
    }
    match path {
        Some(p) => {
            std::fs::write(p, csv).map_err(|e| CliError::Data(format!("cannot write {}: {e}", p.display())))?;
            let summary = serde_json::json!({
                "operator": "plot-data",
                "epsilon": spec.epsilon(),
                "sets": { "all": all.len(), "sky": sky.len(), "eps_sky": eps.len() },
                "output": p.display().to_string(),
            });
            output(writeln!(out, "{}", serde_json::to_string_pretty(&summary).expect("json value")))
        }
        None => output(out.write_all(csv.as_bytes())),
    }
}
