//! Partitioned evaluation of ND and PO.
//!
//! The relation is split round-robin into `m` partitions. Each worker
//! computes the operator on its partition; the operator is then run once
//! more on the union of the local results. A tuple beaten within its own
//! partition is also beaten in the whole relation, so no result is lost.

use std::thread;

use crate::dataset::{Relation, Tuple};
use crate::error::{Error, Result};
use crate::flexnd::{FlexFamily, NdAlgorithm, Prepared};
use crate::flexpo::PoAlgorithm;
use crate::scalar::Scalar;
use crate::stats::{OpStats, Selection};

/// Round-robin assignment of tuple positions to `m` partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionPlan {
    partitions: usize,
}

impl PartitionPlan {
    pub fn new(partitions: usize) -> Result<Self> {
        if partitions == 0 {
            return Err(Error::ZeroPartitions);
        }
        Ok(Self { partitions })
    }

    pub fn partitions(&self) -> usize {
        self.partitions
    }

    /// Nonempty partitions of `0..n`.
    pub fn split(&self, n: usize) -> Vec<Vec<usize>> {
        let m = self.partitions.min(n);
        let mut parts = vec![Vec::with_capacity(n / m.max(1) + 1); m];
        for i in 0..n {
            parts[i % m].push(i);
        }
        parts
    }
}

fn run<T, F>(rel: &Relation<T>, fam: &FlexFamily<T>, plan: PartitionPlan, op: F) -> Result<Selection>
where
    T: Scalar,
    F: Fn(&Prepared<'_, T>, &[usize], &mut OpStats) -> Result<Vec<usize>> + Sync,
{
    let prep = Prepared::new(rel, fam)?;
    let parts = plan.split(rel.len());
    let local: Vec<Result<(Vec<usize>, OpStats)>> = thread::scope(|scope| {
        let handles: Vec<_> = parts
            .iter()
            .map(|part| {
                let (prep, op) = (&prep, &op);
                scope.spawn(move || {
                    let mut stats = OpStats::default();
                    op(prep, part, &mut stats).map(|r| (r, stats))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("partition worker panicked"))
            .collect()
    });

    let mut stats = OpStats::default();
    let mut union = Vec::new();
    for r in local {
        let (indices, s) = r?;
        stats.merge(&s);
        union.extend(indices);
    }
    union.sort_unstable();
    let indices = op(&prep, &union, &mut stats)?;
    Ok(Selection { indices, stats })
}

pub fn parallel_nd_selection<T: Scalar>(
    rel: &Relation<T>,
    fam: &FlexFamily<T>,
    algo: NdAlgorithm,
    plan: PartitionPlan,
) -> Result<Selection> {
    run(rel, fam, plan, |p, subset, s| p.nd_on(subset, algo, s))
}

pub fn parallel_po_selection<T: Scalar>(
    rel: &Relation<T>,
    fam: &FlexFamily<T>,
    algo: PoAlgorithm,
    plan: PartitionPlan,
) -> Result<Selection> {
    run(rel, fam, plan, |p, subset, s| p.po_on(subset, algo, s))
}

pub fn parallel_nd<T: Scalar>(
    rel: &Relation<T>,
    fam: &FlexFamily<T>,
    algo: NdAlgorithm,
    plan: PartitionPlan,
) -> Result<Vec<Tuple<T>>> {
    Ok(rel.select(&parallel_nd_selection(rel, fam, algo, plan)?.indices))
}

pub fn parallel_po<T: Scalar>(
    rel: &Relation<T>,
    fam: &FlexFamily<T>,
    algo: PoAlgorithm,
    plan: PartitionPlan,
) -> Result<Vec<Tuple<T>>> {
    Ok(rel.select(&parallel_po_selection(rel, fam, algo, plan)?.indices))
}
