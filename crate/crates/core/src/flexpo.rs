//! Potentially optimal tuples `PO(r;F)`: tuples that are the unique best
//! under at least one scoring function of `F`.
//!
//! A candidate is tested against its opponents either by the primal LP
//! (find a weight vector and a margin `φ > 0` by which the candidate beats
//! every opponent) or by the dual system (find a convex combination of the
//! opponents that is no worse than the candidate at every vertex of `W(C)`).
//!
//! Opponents tied with the candidate under every function of `F` are left
//! out unless they Pareto-dominate it, so that duplicates of a potentially
//! optimal tuple are all reported.

use std::fmt;
use std::str::FromStr;

use crate::dataset::{Relation, Tuple};
use crate::error::{Error, Result};
use crate::flexnd::{dot, FlexFamily, NdAlgorithm, Prepared};
use crate::scalar::Scalar;
use crate::stats::{OpStats, Selection};
use crate::transform::Transform;
use crate::weightspace::{solve_lp, Bounds, Cmp, ConstraintSet, LpOutcome, LpProblem, Sense};

/// PO algorithm variants: `P`/`D` primal or dual test; `F`/`I` full or
/// incremental opponent set; `1`/`2` opponents from the relation or from ND.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PoAlgorithm {
    Popf1,
    Podf1,
    Popf2,
    Podf2,
    Popi1,
    Podi1,
    Popi2,
    Podi2,
}

/// ND variant computing the first phase of two-phase PO.
pub const PO_ND_ALGORITHM: NdAlgorithm = NdAlgorithm::Sve1f;

impl PoAlgorithm {
    pub const ALL: [PoAlgorithm; 8] = [
        PoAlgorithm::Popf1,
        PoAlgorithm::Podf1,
        PoAlgorithm::Popf2,
        PoAlgorithm::Podf2,
        PoAlgorithm::Popi1,
        PoAlgorithm::Podi1,
        PoAlgorithm::Popi2,
        PoAlgorithm::Podi2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PoAlgorithm::Popf1 => "POPF1",
            PoAlgorithm::Podf1 => "PODF1",
            PoAlgorithm::Popf2 => "POPF2",
            PoAlgorithm::Podf2 => "PODF2",
            PoAlgorithm::Popi1 => "POPI1",
            PoAlgorithm::Podi1 => "PODI1",
            PoAlgorithm::Popi2 => "POPI2",
            PoAlgorithm::Podi2 => "PODI2",
        }
    }

    pub fn is_dual(self) -> bool {
        matches!(
            self,
            PoAlgorithm::Podf1 | PoAlgorithm::Podf2 | PoAlgorithm::Podi1 | PoAlgorithm::Podi2
        )
    }

    pub fn is_incremental(self) -> bool {
        matches!(
            self,
            PoAlgorithm::Popi1 | PoAlgorithm::Podi1 | PoAlgorithm::Popi2 | PoAlgorithm::Podi2
        )
    }

    pub fn is_two_phase(self) -> bool {
        matches!(
            self,
            PoAlgorithm::Popf2 | PoAlgorithm::Podf2 | PoAlgorithm::Popi2 | PoAlgorithm::Podi2
        )
    }
}

impl fmt::Display for PoAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PoAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PoAlgorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// Convex combination coefficients over a set of tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexCombination<T>(Vec<T>);

impl<T: Scalar> ConvexCombination<T> {
    pub fn new(alpha: Vec<T>) -> Result<Self> {
        let tol = T::FEASIBILITY_TOL;
        let sum: T = alpha.iter().copied().sum();
        if alpha.is_empty()
            || alpha.iter().any(|&a| !(a >= -tol && a <= T::one() + tol))
            || (sum - T::one()).abs() > tol
        {
            return Err(Error::InvalidWeights(
                "convex coefficients must lie in [0,1] and sum to 1".into(),
            ));
        }
        Ok(Self(alpha))
    }

    pub fn coefficients(&self) -> &[T] {
        &self.0
    }

    /// `Σ_j α_j · points[j]`, coordinatewise.
    pub fn combine(&self, points: &[&[T]]) -> Vec<T> {
        let d = points.first().map_or(0, |p| p.len());
        let mut out = vec![T::zero(); d];
        for (&a, p) in self.0.iter().zip(points) {
            for (o, &x) in out.iter_mut().zip(p.iter()) {
                *o = *o + a * x;
            }
        }
        out
    }
}

/// maximize φ  s.t.  Σ_i w_i (g_i(t_i) - g_i(o_ji)) + φ <= 0 for every opponent,
/// w ∈ W(C).
fn primal<T: Scalar>(target: &[T], opponents: &[&[T]], cs: &ConstraintSet<T>, stats: &mut OpStats) -> Result<bool> {
    stats.po_tests += 1;
    if opponents.is_empty() {
        return Ok(true);
    }
    let d = target.len();
    let mut objective = vec![T::zero(); d + 1];
    objective[d] = T::one();
    let mut lp = LpProblem::new(Sense::Maximize, objective).with_bounds(d, Bounds::free());
    for o in opponents {
        let mut row: Vec<T> = target.iter().zip(o.iter()).map(|(&a, &b)| a - b).collect();
        row.push(T::one());
        lp.push_row(row, Cmp::Le, T::zero());
    }
    let lp = cs.weight_lp(lp);
    stats.lp_solves += 1;
    Ok(match solve_lp(&lp)? {
        LpOutcome::Optimal { value, .. } => value > T::DOMINANCE_TOL,
        LpOutcome::Unbounded => true,
        LpOutcome::Infeasible => false,
    })
}

/// Feasibility of α ∈ simplex with Σ_j α_j S_l(o_j) <= S_l(t) at every vertex
/// `l`; the candidate is potentially optimal iff the system is unsatisfiable.
/// The right-hand side is relaxed by the dominance tolerance so that both
/// tests compare the same margin against the same threshold.
fn dual<T: Scalar>(target: &[T], opponents: &[&[T]], stats: &mut OpStats) -> Result<bool> {
    stats.po_tests += 1;
    if opponents.is_empty() {
        return Ok(true);
    }
    let sigma = opponents.len();
    let mut lp = LpProblem::feasibility(sigma);
    for (l, &tl) in target.iter().enumerate() {
        let row = opponents.iter().map(|o| o[l] - tl).collect();
        lp.push_row(row, Cmp::Le, T::DOMINANCE_TOL);
    }
    lp.push_row(vec![T::one(); sigma], Cmp::Eq, T::one());
    stats.lp_solves += 1;
    Ok(solve_lp(&lp)?.status() == crate::weightspace::LpStatus::Infeasible)
}

fn check_all<T: Scalar>(fam: &FlexFamily<T>, tuples: &[&Tuple<T>]) -> Result<()> {
    match tuples.iter().find(|t| t.dims() != fam.dims()) {
        Some(t) => Err(Error::DimensionMismatch {
            expected: fam.dims(),
            found: t.dims(),
        }),
        None => Ok(()),
    }
}

/// Primal PO test of `t` against `opponents` (which must not contain `t`'s
/// value vector).
pub fn po_test_primal<T: Scalar>(t: &Tuple<T>, opponents: &[Tuple<T>], fam: &FlexFamily<T>) -> Result<bool> {
    check_all(fam, &std::iter::once(t).chain(opponents).collect::<Vec<_>>())?;
    let g = |x: &Tuple<T>| Transform::apply_all(fam.transforms(), &x.values);
    let target = g(t);
    let opp: Vec<Vec<T>> = opponents.iter().map(g).collect();
    let refs: Vec<&[T]> = opp.iter().map(Vec::as_slice).collect();
    primal(&target, &refs, fam.constraint_set(), &mut OpStats::default())
}

/// Dual PO test of `t` against `opponents`, over the vertices of `W(C)`.
pub fn po_test_dual<T: Scalar>(t: &Tuple<T>, opponents: &[Tuple<T>], fam: &FlexFamily<T>) -> Result<bool> {
    check_all(fam, &std::iter::once(t).chain(opponents).collect::<Vec<_>>())?;
    let vs = |x: &Tuple<T>| {
        let g = Transform::apply_all(fam.transforms(), &x.values);
        fam.polytope()
            .vertices()
            .iter()
            .map(|w| dot(w.as_slice(), &g))
            .collect::<Vec<T>>()
    };
    let target = vs(t);
    let opp: Vec<Vec<T>> = opponents.iter().map(vs).collect();
    let refs: Vec<&[T]> = opp.iter().map(Vec::as_slice).collect();
    dual(&target, &refs, &mut OpStats::default())
}

impl<T: Scalar> Prepared<'_, T> {
    fn po_test(&self, t: usize, opponents: &[usize], dual_test: bool, stats: &mut OpStats) -> Result<bool> {
        if dual_test {
            let refs: Vec<&[T]> = opponents.iter().map(|&o| self.vscores(o)).collect();
            dual(self.vscores(t), &refs, stats)
        } else {
            let refs: Vec<&[T]> = opponents.iter().map(|&o| self.g(o)).collect();
            primal(self.g(t), &refs, self.fam.constraint_set(), stats)
        }
    }

    /// `PO` restricted to the tuples at `subset`; positions returned ascending.
    pub fn po_on(&self, subset: &[usize], algo: PoAlgorithm, stats: &mut OpStats) -> Result<Vec<usize>> {
        let mut pool = if algo.is_two_phase() {
            self.nd_on(subset, PO_ND_ALGORITHM, stats)?
        } else {
            subset.to_vec()
        };
        self.sort_by_key(&mut pool);

        let mut out = Vec::new();
        for &t in &pool {
            let opponents: Vec<usize> = pool
                .iter()
                .copied()
                .filter(|&s| s != t && !(self.tied_everywhere(t, s) && !self.pareto(s, t, stats)))
                .collect();
            let is_po = if algo.is_incremental() {
                let mut size = 2usize;
                loop {
                    let n = size.min(opponents.len());
                    if !self.po_test(t, &opponents[..n], algo.is_dual(), stats)? {
                        break false;
                    }
                    if n == opponents.len() {
                        break true;
                    }
                    size *= 2;
                }
            } else {
                self.po_test(t, &opponents, algo.is_dual(), stats)?
            };
            if is_po {
                out.push(t);
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

pub fn po_selection<T: Scalar>(rel: &Relation<T>, fam: &FlexFamily<T>, algo: PoAlgorithm) -> Result<Selection> {
    let prep = Prepared::new(rel, fam)?;
    let mut stats = OpStats::default();
    let all: Vec<usize> = (0..rel.len()).collect();
    let indices = prep.po_on(&all, algo, &mut stats)?;
    Ok(Selection { indices, stats })
}

/// Potentially optimal tuples, in input order.
pub fn po<T: Scalar>(rel: &Relation<T>, fam: &FlexFamily<T>, algo: PoAlgorithm) -> Result<Vec<Tuple<T>>> {
    Ok(rel.select(&po_selection(rel, fam, algo)?.indices))
}
