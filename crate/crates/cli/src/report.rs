use flexsky_core::{OpStats, Tuple};
use serde::Serialize;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub pareto_tests: u64,
    pub f_dominance_tests: u64,
    pub po_tests: u64,
    pub lp_solves: u64,
    pub sorted_accesses: u64,
    pub random_accesses: u64,
    pub halt_depth: u64,
}

impl From<OpStats> for Counters {
    fn from(s: OpStats) -> Self {
        Self {
            pareto_tests: s.pareto_tests,
            f_dominance_tests: s.f_dominance_tests,
            po_tests: s.po_tests,
            lp_solves: s.lp_solves,
            sorted_accesses: s.sorted_accesses,
            random_accesses: s.random_accesses,
            halt_depth: s.halt_depth,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultTuple {
    pub id: String,
    /// Values as read from the dataset, before normalization.
    pub values: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score: Option<f64>,
}

impl ResultTuple {
    pub fn new(t: &Tuple, score: Option<f64>) -> Self {
        Self {
            id: t.id.clone(),
            values: t.values.clone(),
            score,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultReport {
    pub operator: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partitions: Option<usize>,
    pub count: usize,
    pub result: Vec<ResultTuple>,
    pub wall_time_ms: f64,
    pub counters: Counters,
}
