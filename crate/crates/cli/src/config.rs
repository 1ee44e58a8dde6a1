//! Query configuration: a flat `key = value` text format.
//!
//! Lines are trimmed; blank lines and lines starting with `#` are skipped.
//! Every key may appear once, except `constraint`, which may repeat.
//! Unknown keys are rejected. Relative dataset paths resolve against the
//! directory of the config file.

use std::path::{Path, PathBuf};

use crate::error::CliError;

pub const KEYS: [&str; 14] = [
    "dataset",
    "schema",
    "normalize",
    "transforms",
    "constraint",
    "weights",
    "k",
    "epsilon",
    "eps_weights",
    "strict_exists",
    "algo",
    "parallel",
    "aggregation",
    "seed",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct QueryConfig {
    pub dataset: Option<PathBuf>,
    /// `name:min|max` list; the bundled data uses `price:min, cpu:min`.
    pub schema: Option<String>,
    pub normalize: Option<bool>,
    /// One transform per attribute (`identity`, `log`, `power:p`).
    pub transforms: Option<Vec<String>>,
    /// Rows `a_1, ..., a_d <= k` or `>= k`.
    pub constraints: Vec<String>,
    /// Scoring weights for `topk`, and aggregation weights for `fa`/`ta`.
    pub weights: Option<Vec<f64>>,
    pub k: Option<usize>,
    pub epsilon: Option<f64>,
    pub eps_weights: Option<Vec<f64>>,
    pub strict_exists: Option<bool>,
    pub algo: Option<String>,
    pub parallel: Option<usize>,
    /// `min`, `avg` or `weighted`.
    pub aggregation: Option<String>,
    pub seed: Option<u64>,
}

fn bad(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("line {line}: {msg}"))
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| bad(line, format!("`{key}` expects a number, got `{v}`")))
}

fn parse_bool(line: usize, key: &str, v: &str) -> Result<bool, CliError> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(bad(line, format!("`{key}` expects true or false, got `{v}`"))),
    }
}

/// Comma-separated numbers.
pub fn parse_list(v: &str) -> Result<Vec<f64>, String> {
    v.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad number `{}`", x.trim())))
        .collect()
}

fn set<T>(slot: &mut Option<T>, line: usize, key: &str, value: T) -> Result<(), CliError> {
    if slot.is_some() {
        return Err(bad(line, format!("duplicate key `{key}`")));
    }
    *slot = Some(value);
    Ok(())
}

impl QueryConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = QueryConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let (key, value) = s
                .split_once('=')
                .ok_or_else(|| bad(line, format!("expected `key = value`, got `{s}`")))?;
            let (key, v) = (key.trim(), value.trim());
            match key {
                "dataset" => set(&mut cfg.dataset, line, key, PathBuf::from(v))?,
                "schema" => set(&mut cfg.schema, line, key, v.to_string())?,
                "normalize" => set(&mut cfg.normalize, line, key, parse_bool(line, key, v)?)?,
                "transforms" => set(
                    &mut cfg.transforms,
                    line,
                    key,
                    v.split(',').map(|t| t.trim().to_string()).collect(),
                )?,
                "constraint" => cfg.constraints.push(v.to_string()),
                "weights" => set(&mut cfg.weights, line, key, parse_list(v).map_err(|e| bad(line, e))?)?,
                "k" => set(&mut cfg.k, line, key, parse_num(line, key, v)?)?,
                "epsilon" => set(&mut cfg.epsilon, line, key, parse_num(line, key, v)?)?,
                "eps_weights" => set(&mut cfg.eps_weights, line, key, parse_list(v).map_err(|e| bad(line, e))?)?,
                "strict_exists" => set(&mut cfg.strict_exists, line, key, parse_bool(line, key, v)?)?,
                "algo" => set(&mut cfg.algo, line, key, v.to_string())?,
                "parallel" => set(&mut cfg.parallel, line, key, parse_num(line, key, v)?)?,
                "aggregation" => set(&mut cfg.aggregation, line, key, v.to_ascii_lowercase())?,
                "seed" => set(&mut cfg.seed, line, key, parse_num(line, key, v)?)?,
                other => return Err(bad(line, format!("unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        if let (Some(ds), Some(dir)) = (&cfg.dataset, path.parent()) {
            if ds.is_relative() {
                cfg.dataset = Some(dir.join(ds));
            }
        }
        Ok(cfg)
    }
}
