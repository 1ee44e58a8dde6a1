//! Fagin's Algorithm (FA) and the Threshold Algorithm (TA).
//!
//! These follow the middleware convention of the original algorithms:
//! grades are in `[0,1]` and *higher* is better. [`SortedList::from_relation`]
//! bridges from the engine's minimizing relations by using `1 - value`.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::dataset::Relation;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stats::OpStats;

#[derive(Debug, Clone, PartialEq)]
pub struct GradedObject<T> {
    pub id: String,
    pub grade: T,
}

/// One attribute's objects in descending grade order, with random access by id.
#[derive(Debug, Clone)]
pub struct SortedList<T> {
    attribute: usize,
    entries: Vec<GradedObject<T>>,
    position: HashMap<String, usize>,
}

fn by_grade_desc<T: Scalar>(a: &GradedObject<T>, b: &GradedObject<T>) -> Ordering {
    b.grade
        .partial_cmp(&a.grade)
        .unwrap_or(Ordering::Equal)
        .then_with(|| a.id.cmp(&b.id))
}

impl<T: Scalar> SortedList<T> {
    /// Sorts `entries` by descending grade (ties by id).
    pub fn new(attribute: usize, mut entries: Vec<GradedObject<T>>) -> Result<Self> {
        if let Some(e) = entries
            .iter()
            .find(|e| !(e.grade >= T::zero() && e.grade <= T::one()))
        {
            return Err(Error::InvalidSortedList(format!(
                "grade {} of `{}` outside [0,1]",
                e.grade, e.id
            )));
        }
        entries.sort_by(by_grade_desc);
        let mut position = HashMap::with_capacity(entries.len());
        for (i, e) in entries.iter().enumerate() {
            if position.insert(e.id.clone(), i).is_some() {
                return Err(Error::InvalidSortedList(format!("`{}` listed twice", e.id)));
            }
        }
        Ok(Self {
            attribute,
            entries,
            position,
        })
    }

    /// Grades `1 - t[attribute]` over a normalized relation.
    pub fn from_relation(rel: &Relation<T>, attribute: usize) -> Result<Self> {
        if attribute >= rel.dims() {
            return Err(Error::DimensionMismatch {
                expected: rel.dims(),
                found: attribute + 1,
            });
        }
        let entries = rel
            .tuples()
            .iter()
            .map(|t| GradedObject {
                id: t.id.clone(),
                grade: (T::one() - t.values[attribute]).max(T::zero()).min(T::one()),
            })
            .collect();
        Self::new(attribute, entries)
    }

    pub fn attribute(&self) -> usize {
        self.attribute
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sorted_access(&self, depth: usize) -> Option<&GradedObject<T>> {
        self.entries.get(depth)
    }

    pub fn random_access(&self, id: &str) -> Option<T> {
        self.position.get(id).map(|&i| self.entries[i].grade)
    }
}

/// Monotone combination of per-list grades.
#[derive(Debug, Clone, PartialEq)]
pub enum Aggregation<T> {
    Min,
    Avg,
    WeightedSum(Vec<T>),
}

impl<T: Scalar> Aggregation<T> {
    pub fn weighted(weights: Vec<T>) -> Result<Self> {
        if weights.iter().any(|&w| !(w >= T::zero())) {
            return Err(Error::InvalidWeights("aggregation weights must be >= 0".into()));
        }
        Ok(Aggregation::WeightedSum(weights))
    }

    pub fn apply(&self, grades: &[T]) -> T {
        match self {
            Aggregation::Min => grades.iter().copied().fold(T::infinity(), T::min),
            Aggregation::Avg => {
                let n = T::from_usize(grades.len().max(1)).unwrap_or(T::one());
                grades.iter().copied().sum::<T>() / n
            }
            Aggregation::WeightedSum(w) => grades
                .iter()
                .zip(w)
                .fold(T::zero(), |acc, (&g, &w)| acc + g * w),
        }
    }

    fn check_arity(&self, m: usize) -> Result<()> {
        match self {
            Aggregation::WeightedSum(w) if w.len() != m => Err(Error::DimensionMismatch {
                expected: m,
                found: w.len(),
            }),
            _ => Ok(()),
        }
    }
}

/// Best objects by aggregated grade (descending, ties by id) plus access counters.
#[derive(Debug, Clone, PartialEq)]
pub struct TopK<T> {
    pub items: Vec<GradedObject<T>>,
    pub stats: OpStats,
}

fn validate<T: Scalar>(lists: &[SortedList<T>], agg: &Aggregation<T>, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let Some(first) = lists.first() else {
        return Err(Error::InconsistentUniverse("no lists".into()));
    };
    agg.check_arity(lists.len())?;
    for list in &lists[1..] {
        if list.len() != first.len() {
            return Err(Error::InconsistentUniverse(format!(
                "list lengths {} and {}",
                first.len(),
                list.len()
            )));
        }
        if let Some(e) = first.entries.iter().find(|e| !list.position.contains_key(&e.id)) {
            return Err(Error::InconsistentUniverse(format!(
                "`{}` missing from list on attribute {}",
                e.id, list.attribute
            )));
        }
    }
    Ok(())
}

fn finish<T: Scalar>(mut items: Vec<GradedObject<T>>, k: usize, stats: OpStats) -> TopK<T> {
    items.sort_by(by_grade_desc);
    items.truncate(k);
    TopK { items, stats }
}

/// Fagin's Algorithm: round-robin sorted access until at least `k` objects
/// have been seen in every list, then random access for the missing grades
/// of every seen object.
pub fn fa<T: Scalar>(lists: &[SortedList<T>], agg: &Aggregation<T>, k: usize) -> Result<TopK<T>> {
    validate(lists, agg, k)?;
    let m = lists.len();
    let len = lists[0].len();
    let mut stats = OpStats::default();

    // Grades learnt by sorted access, per object, in first-seen order.
    let mut seen: HashMap<&str, Vec<Option<T>>> = HashMap::new();
    let mut order: Vec<&str> = Vec::new();
    let mut matches = 0usize;
    let mut depth = 0usize;
    while matches < k && depth < len {
        for (i, list) in lists.iter().enumerate() {
            let e = &list.entries[depth];
            stats.sorted_accesses += 1;
            let grades = seen.entry(e.id.as_str()).or_insert_with(|| {
                order.push(e.id.as_str());
                vec![None; m]
            });
            grades[i] = Some(e.grade);
            if grades.iter().all(Option::is_some) {
                matches += 1;
            }
        }
        depth += 1;
    }
    stats.halt_depth = depth as u64;

    let mut items = Vec::with_capacity(order.len());
    for id in order {
        let grades: Vec<T> = seen[id]
            .iter()
            .zip(lists)
            .map(|(g, list)| {
                g.unwrap_or_else(|| {
                    stats.random_accesses += 1;
                    list.random_access(id).expect("universe validated")
                })
            })
            .collect();
        items.push(GradedObject {
            id: id.to_string(),
            grade: agg.apply(&grades),
        });
    }
    Ok(finish(items, k, stats))
}

/// Threshold Algorithm: sorted access in parallel, fully resolving every newly
/// seen object by random access; halts once `k` seen objects grade at least
/// the threshold `τ = agg(last grades seen in each list)`.
pub fn ta<T: Scalar>(lists: &[SortedList<T>], agg: &Aggregation<T>, k: usize) -> Result<TopK<T>> {
    validate(lists, agg, k)?;
    let m = lists.len();
    let len = lists[0].len();
    let mut stats = OpStats::default();

    let mut graded: HashMap<&str, T> = HashMap::new();
    let mut last = vec![T::zero(); m];
    let mut grades = vec![T::zero(); m];
    let mut depth = 0usize;
    while depth < len {
        for (i, list) in lists.iter().enumerate() {
            let e = &list.entries[depth];
            stats.sorted_accesses += 1;
            last[i] = e.grade;
            if graded.contains_key(e.id.as_str()) {
                continue;
            }
            for (j, other) in lists.iter().enumerate() {
                grades[j] = if j == i {
                    e.grade
                } else {
                    stats.random_accesses += 1;
                    other.random_access(&e.id).expect("universe validated")
                };
            }
            graded.insert(e.id.as_str(), agg.apply(&grades));
        }
        depth += 1;
        let tau = agg.apply(&last);
        if graded.values().filter(|&&g| g >= tau).count() >= k {
            break;
        }
    }
    stats.halt_depth = depth as u64;

    let items = graded
        .into_iter()
        .map(|(id, grade)| GradedObject {
            id: id.to_string(),
            grade,
        })
        .collect();
    Ok(finish(items, k, stats))
}
