//! F-dominance and the non-dominated flexible skyline `ND(r;F)`.
//!
//! `F` is a family of scoring functions `Σ w_i·g_i(t[i])` whose weights range
//! over the polytope `W(C)`. A tuple `t` F-dominates `s` when no function of
//! `F` scores `t` worse than `s`, and the two are not tied under every
//! function of `F` unless `t` Pareto-dominates `s`. On a full-dimensional
//! polytope the tie clause only excludes identical tuples; on a degenerate
//! one (e.g. pinned weights) it keeps the relation a strict order.
//!
//! Two primitives decide F-dominance: a pair of LPs over `W(C)`
//! ([`f_dominates_lp`]) or `q` inequalities at the vertices of `W(C)`
//! ([`f_dominates_region`]). Both agree on every input.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::dataset::{Relation, Tuple};
use crate::dominance::{self, dominates};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stats::{OpStats, Selection};
use crate::transform::Transform;
use crate::weightspace::{
    barycenter, enumerate_vertices, solve_lp, ConstraintSet, LpOutcome, LpProblem, Sense,
    WeightPolytope, WeightVector,
};

/// Scoring family: monotone transforms plus weight constraints, with `W(C)`
/// already enumerated.
#[derive(Debug, Clone)]
pub struct FlexFamily<T> {
    transforms: Vec<Transform<T>>,
    polytope: WeightPolytope<T>,
    barycenter: WeightVector<T>,
}

impl<T: Scalar> FlexFamily<T> {
    pub fn new(transforms: Vec<Transform<T>>, constraints: ConstraintSet<T>) -> Result<Self> {
        if transforms.len() != constraints.dims() {
            return Err(Error::DimensionMismatch {
                expected: constraints.dims(),
                found: transforms.len(),
            });
        }
        let polytope = enumerate_vertices(&constraints)?;
        let barycenter = barycenter(&polytope);
        Ok(Self {
            transforms,
            polytope,
            barycenter,
        })
    }

    /// Identity transforms.
    pub fn linear(constraints: ConstraintSet<T>) -> Result<Self> {
        let d = constraints.dims();
        Self::new(vec![Transform::Identity; d], constraints)
    }

    /// Identity transforms over the whole weight simplex; ND equals the skyline.
    pub fn unconstrained(dims: usize) -> Result<Self> {
        Self::linear(ConstraintSet::unconstrained(dims)?)
    }

    pub fn dims(&self) -> usize {
        self.transforms.len()
    }

    pub fn transforms(&self) -> &[Transform<T>] {
        &self.transforms
    }

    pub fn constraint_set(&self) -> &ConstraintSet<T> {
        self.polytope.constraint_set()
    }

    pub fn polytope(&self) -> &WeightPolytope<T> {
        &self.polytope
    }

    pub fn barycenter(&self) -> &WeightVector<T> {
        &self.barycenter
    }

    fn transformed(&self, values: &[T]) -> Vec<T> {
        Transform::apply_all(&self.transforms, values)
    }

    fn vertex_scores(&self, g: &[T]) -> Vec<T> {
        self.polytope
            .vertices()
            .iter()
            .map(|w| dot(w.as_slice(), g))
            .collect()
    }

    fn check(&self, t: &Tuple<T>) -> Result<()> {
        if t.dims() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                found: t.dims(),
            });
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// ND algorithm variants. `S`/`U`: sorted or unsorted input; `VE`/`LP`:
/// vertex-region or LP dominance primitive; `1`/`2`: one phase, or skyline
/// first; `F`: skyline and F-dominance interleaved in one sorted pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NdAlgorithm {
    Sve1,
    Sve1f,
    Sve2,
    Slp1,
    Slp2,
    Uve2,
    Ulp2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Primitive {
    Region,
    Lp,
}

impl NdAlgorithm {
    pub const ALL: [NdAlgorithm; 7] = [
        NdAlgorithm::Sve1,
        NdAlgorithm::Sve1f,
        NdAlgorithm::Sve2,
        NdAlgorithm::Slp1,
        NdAlgorithm::Slp2,
        NdAlgorithm::Uve2,
        NdAlgorithm::Ulp2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NdAlgorithm::Sve1 => "SVE1",
            NdAlgorithm::Sve1f => "SVE1F",
            NdAlgorithm::Sve2 => "SVE2",
            NdAlgorithm::Slp1 => "SLP1",
            NdAlgorithm::Slp2 => "SLP2",
            NdAlgorithm::Uve2 => "UVE2",
            NdAlgorithm::Ulp2 => "ULP2",
        }
    }

    pub fn is_sorted(self) -> bool {
        !matches!(self, NdAlgorithm::Uve2 | NdAlgorithm::Ulp2)
    }

    pub fn is_two_phase(self) -> bool {
        matches!(
            self,
            NdAlgorithm::Sve2 | NdAlgorithm::Slp2 | NdAlgorithm::Uve2 | NdAlgorithm::Ulp2
        )
    }

    pub fn uses_lp(self) -> bool {
        self.primitive() == Primitive::Lp
    }

    fn primitive(self) -> Primitive {
        match self {
            NdAlgorithm::Slp1 | NdAlgorithm::Slp2 | NdAlgorithm::Ulp2 => Primitive::Lp,
            _ => Primitive::Region,
        }
    }
}

impl fmt::Display for NdAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NdAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NdAlgorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// Decision shared by both primitives once the extremes of
/// `score(s) - score(t)` over `W(C)` are known.
#[inline]
fn decide<T: Scalar>(min_gap: T, max_gap: T, pareto: bool) -> bool {
    min_gap >= -T::DOMINANCE_TOL && (max_gap > T::DOMINANCE_TOL || pareto)
}

/// Extremes of `Σ w_i·delta_i` over `W(C)` by LP. Returns the minimum, and
/// the maximum only when `need_max` and the minimum is non-negative.
fn lp_gap<T: Scalar>(delta: &[T], cs: &ConstraintSet<T>, need_max: bool, stats: &mut OpStats) -> Result<(T, T)> {
    let solve = |sense: Sense, stats: &mut OpStats| -> Result<T> {
        stats.lp_solves += 1;
        match solve_lp(&cs.weight_lp(LpProblem::new(sense, delta.to_vec())))? {
            LpOutcome::Optimal { value, .. } => Ok(value),
            // W(C) was validated nonempty and is bounded.
            LpOutcome::Infeasible => Err(Error::EmptyPolytope),
            LpOutcome::Unbounded => unreachable!("weight polytope is bounded"),
        }
    };
    let min = solve(Sense::Minimize, stats)?;
    if min < -T::DOMINANCE_TOL || !need_max {
        return Ok((min, T::zero()));
    }
    let max = solve(Sense::Maximize, stats)?;
    Ok((min, max))
}

/// F-dominance via the LP formulation: minimize `Σ w_i(g_i(s_i) - g_i(t_i))`
/// over `W(C)`; `t` dominates when the optimum is non-negative (and, absent
/// Pareto dominance, the maximum is positive).
pub fn f_dominates_lp<T: Scalar>(t: &Tuple<T>, s: &Tuple<T>, fam: &FlexFamily<T>) -> Result<bool> {
    fam.check(t)?;
    fam.check(s)?;
    let gt = fam.transformed(&t.values);
    let gs = fam.transformed(&s.values);
    let delta: Vec<T> = gs.iter().zip(&gt).map(|(&b, &a)| b - a).collect();
    let pareto = dominates(&t.values, &s.values);
    let (min, max) = lp_gap(&delta, fam.constraint_set(), !pareto, &mut OpStats::default())?;
    Ok(decide(min, max, pareto))
}

/// F-dominance via the dominance region: `s` scores no better than `t` at
/// every vertex of `W(C)`.
pub fn f_dominates_region<T: Scalar>(t: &Tuple<T>, s: &Tuple<T>, fam: &FlexFamily<T>) -> Result<bool> {
    fam.check(t)?;
    fam.check(s)?;
    let st = fam.vertex_scores(&fam.transformed(&t.values));
    let ss = fam.vertex_scores(&fam.transformed(&s.values));
    let (min, max) = gap_extremes(&st, &ss);
    Ok(decide(min, max, dominates(&t.values, &s.values)))
}

#[inline]
fn gap_extremes<T: Scalar>(st: &[T], ss: &[T]) -> (T, T) {
    st.iter()
        .zip(ss)
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), (&a, &b)| {
            let gap = b - a;
            (lo.min(gap), hi.max(gap))
        })
}

/// Per-relation precomputation shared by the ND, PO and parallel drivers:
/// transformed values, vertex scores and the barycenter sort key.
pub(crate) struct Prepared<'a, T> {
    pub rel: &'a Relation<T>,
    pub fam: &'a FlexFamily<T>,
    pub d: usize,
    pub q: usize,
    g: Vec<T>,
    vscores: Vec<T>,
    keys: Vec<T>,
}

impl<'a, T: Scalar> Prepared<'a, T> {
    pub fn new(rel: &'a Relation<T>, fam: &'a FlexFamily<T>) -> Result<Self> {
        if rel.dims() != fam.dims() {
            return Err(Error::DimensionMismatch {
                expected: fam.dims(),
                found: rel.dims(),
            });
        }
        let d = fam.dims();
        let q = fam.polytope().q();
        let mut g = Vec::with_capacity(rel.len() * d);
        let mut vscores = Vec::with_capacity(rel.len() * q);
        let mut keys = Vec::with_capacity(rel.len());
        for t in rel.tuples() {
            let gt = fam.transformed(&t.values);
            vscores.extend(fam.vertex_scores(&gt));
            keys.push(dot(fam.barycenter().as_slice(), &gt));
            g.extend(gt);
        }
        Ok(Self {
            rel,
            fam,
            d,
            q,
            g,
            vscores,
            keys,
        })
    }

    #[inline]
    pub fn values(&self, i: usize) -> &[T] {
        &self.rel.tuples()[i].values
    }

    #[inline]
    pub fn g(&self, i: usize) -> &[T] {
        &self.g[i * self.d..(i + 1) * self.d]
    }

    #[inline]
    pub fn vscores(&self, i: usize) -> &[T] {
        &self.vscores[i * self.q..(i + 1) * self.q]
    }

    #[inline]
    pub fn key(&self, i: usize) -> T {
        self.keys[i]
    }

    /// Ascending barycenter score, ties by position.
    pub fn sort_by_key(&self, items: &mut [usize]) {
        items.sort_by(|&a, &b| {
            self.keys[a]
                .partial_cmp(&self.keys[b])
                .unwrap_or(Ordering::Equal)
                .then(a.cmp(&b))
        });
    }

    /// Keys this close may belong to a dominator ordered after its victim.
    fn key_tie(&self) -> T {
        T::DOMINANCE_TOL * T::of(4.0)
    }

    #[inline]
    pub fn pareto(&self, a: usize, b: usize, stats: &mut OpStats) -> bool {
        stats.pareto_tests += 1;
        dominates(self.values(a), self.values(b))
    }

    /// Whether `a` and `b` score identically (within tolerance) at every vertex.
    pub fn tied_everywhere(&self, a: usize, b: usize) -> bool {
        let (lo, hi) = gap_extremes(self.vscores(a), self.vscores(b));
        lo >= -T::DOMINANCE_TOL && hi <= T::DOMINANCE_TOL
    }

    fn f_dominates(&self, a: usize, b: usize, prim: Primitive, stats: &mut OpStats) -> Result<bool> {
        stats.f_dominance_tests += 1;
        let pareto = dominates(self.values(a), self.values(b));
        match prim {
            Primitive::Region => {
                let (lo, hi) = gap_extremes(self.vscores(a), self.vscores(b));
                Ok(decide(lo, hi, pareto))
            }
            Primitive::Lp => {
                let delta: Vec<T> = self
                    .g(b)
                    .iter()
                    .zip(self.g(a))
                    .map(|(&y, &x)| y - x)
                    .collect();
                let (lo, hi) = lp_gap(&delta, self.fam.constraint_set(), !pareto, stats)?;
                Ok(decide(lo, hi, pareto))
            }
        }
    }

    /// One sorted pass with a window of survivors. `order` must be sorted by
    /// key; a candidate can only be dominated by an earlier one or by a
    /// later one with a tied key, which is checked on insertion.
    fn sorted_window<F>(&self, order: &[usize], stats: &mut OpStats, mut dom: F) -> Result<Vec<usize>>
    where
        F: FnMut(usize, usize, &mut OpStats) -> Result<bool>,
    {
        let tie = self.key_tie();
        let mut window: Vec<usize> = Vec::new();
        for &t in order {
            if try_any(&window, |u| dom(u, t, stats))? {
                continue;
            }
            let floor = self.key(t) - tie;
            let mut kept = Vec::with_capacity(window.len() + 1);
            for &u in &window {
                if self.key(u) >= floor && dom(t, u, stats)? {
                    continue;
                }
                kept.push(u);
            }
            kept.push(t);
            window = kept;
        }
        window.sort_unstable();
        Ok(window)
    }

    /// Sort-filter skyline over `subset`.
    pub fn sorted_skyline(&self, subset: &[usize], stats: &mut OpStats) -> Vec<usize> {
        let mut order = subset.to_vec();
        self.sort_by_key(&mut order);
        self.sorted_window(&order, stats, |a, b, s| Ok(self.pareto(a, b, s)))
            .expect("Pareto tests are infallible")
    }

    fn nd_sorted(&self, candidates: &[usize], prim: Primitive, stats: &mut OpStats) -> Result<Vec<usize>> {
        let mut order = candidates.to_vec();
        self.sort_by_key(&mut order);
        self.sorted_window(&order, stats, |a, b, s| self.f_dominates(a, b, prim, s))
    }

    fn nd_pairwise(&self, candidates: &[usize], prim: Primitive, stats: &mut OpStats) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for &t in candidates {
            let beaten = try_any(candidates, |s| {
                if s == t {
                    Ok(false)
                } else {
                    self.f_dominates(s, t, prim, stats)
                }
            })?;
            if !beaten {
                out.push(t);
            }
        }
        Ok(out)
    }

    /// Skyline and ND windows maintained together in one sorted pass; a
    /// Pareto witness discards a candidate before any vertex work.
    fn nd_interleaved(&self, subset: &[usize], stats: &mut OpStats) -> Result<Vec<usize>> {
        let mut order = subset.to_vec();
        self.sort_by_key(&mut order);
        let tie = self.key_tie();
        let mut sky: Vec<usize> = Vec::new();
        let mut nd: Vec<usize> = Vec::new();
        for &t in &order {
            if sky.iter().any(|&u| self.pareto(u, t, stats)) {
                continue;
            }
            let floor = self.key(t) - tie;
            sky.retain(|&u| !(self.key(u) >= floor && self.pareto(t, u, stats)));
            sky.push(t);

            if try_any(&nd, |u| self.f_dominates(u, t, Primitive::Region, stats))? {
                continue;
            }
            let mut kept = Vec::with_capacity(nd.len() + 1);
            for &u in &nd {
                if self.key(u) >= floor && self.f_dominates(t, u, Primitive::Region, stats)? {
                    continue;
                }
                kept.push(u);
            }
            kept.push(t);
            nd = kept;
        }
        nd.sort_unstable();
        Ok(nd)
    }

    /// `ND` restricted to the tuples at `subset`; positions returned ascending.
    pub fn nd_on(&self, subset: &[usize], algo: NdAlgorithm, stats: &mut OpStats) -> Result<Vec<usize>> {
        let prim = algo.primitive();
        match algo {
            NdAlgorithm::Sve1 | NdAlgorithm::Slp1 => self.nd_sorted(subset, prim, stats),
            NdAlgorithm::Sve1f => self.nd_interleaved(subset, stats),
            NdAlgorithm::Sve2 | NdAlgorithm::Slp2 => {
                let sky = self.sorted_skyline(subset, stats);
                self.nd_sorted(&sky, prim, stats)
            }
            NdAlgorithm::Uve2 | NdAlgorithm::Ulp2 => {
                let sky = dominance::bnl(self.rel, subset.iter().copied(), stats);
                self.nd_pairwise(&sky, prim, stats)
            }
        }
    }
}

fn try_any<F>(items: &[usize], mut pred: F) -> Result<bool>
where
    F: FnMut(usize) -> Result<bool>,
{
    for &i in items {
        if pred(i)? {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn nd_selection<T: Scalar>(rel: &Relation<T>, fam: &FlexFamily<T>, algo: NdAlgorithm) -> Result<Selection> {
    let prep = Prepared::new(rel, fam)?;
    let mut stats = OpStats::default();
    let all: Vec<usize> = (0..rel.len()).collect();
    let indices = prep.nd_on(&all, algo, &mut stats)?;
    Ok(Selection { indices, stats })
}

/// Tuples not F-dominated by any other tuple, in input order.
pub fn nd<T: Scalar>(rel: &Relation<T>, fam: &FlexFamily<T>, algo: NdAlgorithm) -> Result<Vec<Tuple<T>>> {
    Ok(rel.select(&nd_selection(rel, fam, algo)?.indices))
}
