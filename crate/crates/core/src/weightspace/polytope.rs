use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use super::lp::{solve_lp, Cmp, LpProblem, LpStatus};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `coefficients · w <= bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint<T> {
    pub coefficients: Vec<T>,
    pub bound: T,
}

impl<T: Scalar> LinearConstraint<T> {
    pub fn new(coefficients: Vec<T>, bound: T) -> Self {
        Self {
            coefficients,
            bound,
        }
    }

    /// `coefficients · w >= bound`, stored negated.
    pub fn at_least(coefficients: Vec<T>, bound: T) -> Self {
        Self::new(coefficients.into_iter().map(|a| -a).collect(), -bound)
    }

    pub fn dims(&self) -> usize {
        self.coefficients.len()
    }

    pub fn lhs(&self, w: &[T]) -> T {
        self.coefficients
            .iter()
            .zip(w)
            .fold(T::zero(), |acc, (&a, &x)| acc + a * x)
    }

    pub fn satisfied_by(&self, w: &[T], tol: T) -> bool {
        self.lhs(w) <= self.bound + tol
    }
}

/// Parses `a_1, ..., a_d <= k` (or `>= k`).
impl<T: Scalar> FromStr for LinearConstraint<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lhs, rhs, at_least) = if let Some((l, r)) = s.split_once("<=") {
            (l, r, false)
        } else if let Some((l, r)) = s.split_once(">=") {
            (l, r, true)
        } else {
            return Err(Error::InvalidConstraint(format!("missing `<=` or `>=` in `{s}`")));
        };
        let num = |tok: &str| {
            tok.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(T::of)
                .ok_or_else(|| Error::InvalidConstraint(format!("bad number `{}` in `{s}`", tok.trim())))
        };
        let coefficients = lhs.split(',').map(num).collect::<Result<Vec<T>>>()?;
        let bound = num(rhs)?;
        Ok(if at_least {
            Self::at_least(coefficients, bound)
        } else {
            Self::new(coefficients, bound)
        })
    }
}

impl<T: Scalar> fmt::Display for LinearConstraint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = self.coefficients.iter().map(|a| a.to_string()).join(",");
        write!(f, "{lhs} <= {}", self.bound)
    }
}

/// Linear constraints on the weights, on top of the implicit simplex
/// conditions `w_i ∈ [0,1]`, `Σ w_i = 1`. Construction proves the region is
/// nonempty.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSet<T> {
    dims: usize,
    constraints: Vec<LinearConstraint<T>>,
}

impl<T: Scalar> ConstraintSet<T> {
    pub fn new(dims: usize, constraints: Vec<LinearConstraint<T>>) -> Result<Self> {
        if dims == 0 {
            return Err(Error::InvalidConstraint("weight space needs d >= 1".into()));
        }
        if let Some(c) = constraints.iter().find(|c| c.dims() != dims) {
            return Err(Error::DimensionMismatch {
                expected: dims,
                found: c.dims(),
            });
        }
        let set = Self { dims, constraints };
        let feasible = set.weight_lp(LpProblem::feasibility(dims));
        if solve_lp(&feasible)?.status() != LpStatus::Optimal {
            return Err(Error::EmptyPolytope);
        }
        Ok(set)
    }

    /// The full weight simplex.
    pub fn unconstrained(dims: usize) -> Result<Self> {
        Self::new(dims, Vec::new())
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn constraints(&self) -> &[LinearConstraint<T>] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn contains(&self, w: &[T]) -> bool {
        let tol = T::FEASIBILITY_TOL;
        w.len() == self.dims
            && w.iter().all(|&x| x >= -tol && x <= T::one() + tol)
            && (w.iter().copied().sum::<T>() - T::one()).abs() <= tol
            && self.constraints.iter().all(|c| c.satisfied_by(w, tol))
    }

    /// Adds `W(C)` membership rows over the first `dims` variables of `lp`,
    /// which must already be non-negative.
    pub(crate) fn weight_lp(&self, mut lp: LpProblem<T>) -> LpProblem<T> {
        let n = lp.vars();
        let pad = |head: &[T]| {
            let mut row = head.to_vec();
            row.resize(n, T::zero());
            row
        };
        lp.push_row(pad(&vec![T::one(); self.dims]), Cmp::Eq, T::one());
        for c in &self.constraints {
            lp.push_row(pad(&c.coefficients), Cmp::Le, c.bound);
        }
        lp
    }
}

/// A point of the weight simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<T>(Vec<T>);

impl<T: Scalar> WeightVector<T> {
    pub fn new(w: Vec<T>) -> Result<Self> {
        let tol = T::FEASIBILITY_TOL;
        if w.is_empty() {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        if let Some(x) = w.iter().find(|&&x| !(x >= -tol && x <= T::one() + tol)) {
            return Err(Error::InvalidWeights(format!("weight {x} outside [0,1]")));
        }
        let sum: T = w.iter().copied().sum();
        if (sum - T::one()).abs() > tol {
            return Err(Error::InvalidWeights(format!("weights sum to {sum}, not 1")));
        }
        Ok(Self(w))
    }

    /// Rescales non-negative weights to sum to one.
    pub fn normalized(w: Vec<T>) -> Result<Self> {
        let sum: T = w.iter().copied().sum();
        if w.iter().any(|&x| x < T::zero()) || sum <= T::zero() {
            return Err(Error::InvalidWeights("weights must be non-negative, not all zero".into()));
        }
        Self::new(w.into_iter().map(|x| x / sum).collect())
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn dims(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }
}

/// `W(C)` represented by its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightPolytope<T> {
    constraint_set: ConstraintSet<T>,
    vertices: Vec<WeightVector<T>>,
    affine_dim: usize,
}

impl<T: Scalar> WeightPolytope<T> {
    pub fn constraint_set(&self) -> &ConstraintSet<T> {
        &self.constraint_set
    }

    pub fn vertices(&self) -> &[WeightVector<T>] {
        &self.vertices
    }

    /// Number of vertices.
    pub fn q(&self) -> usize {
        self.vertices.len()
    }

    pub fn dims(&self) -> usize {
        self.constraint_set.dims()
    }

    /// Dimension of the affine hull of the vertices.
    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    /// True when the polytope spans the whole `(d-1)`-dimensional simplex
    /// hyperplane, so distinct transformed tuples always differ in score
    /// somewhere on it.
    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim + 1 == self.dims()
    }
}

/// Enumerates the vertices of `{w ∈ [0,1]^d : Σw = 1, A·w <= k}` by trying
/// every choice of `d-1` active inequalities. Output is deduplicated and in
/// lexicographic order.
pub fn enumerate_vertices<T: Scalar>(cs: &ConstraintSet<T>) -> Result<WeightPolytope<T>> {
    let d = cs.dims();
    let halfspaces: Vec<LinearConstraint<T>> = (0..d)
        .flat_map(|i| {
            let mut unit = vec![T::zero(); d];
            unit[i] = T::one();
            [
                LinearConstraint::at_least(unit.clone(), T::zero()),
                LinearConstraint::new(unit, T::one()),
            ]
        })
        .chain(cs.constraints().iter().cloned())
        .collect();

    let mut vertices: Vec<Vec<T>> = Vec::new();
    for active in (0..halfspaces.len()).combinations(d - 1) {
        let mut system: Vec<Vec<T>> = Vec::with_capacity(d);
        let mut rhs: Vec<T> = Vec::with_capacity(d);
        system.push(vec![T::one(); d]);
        rhs.push(T::one());
        for &h in &active {
            system.push(halfspaces[h].coefficients.clone());
            rhs.push(halfspaces[h].bound);
        }
        let Some(mut w) = solve_square(system, rhs) else {
            continue;
        };
        if !halfspaces
            .iter()
            .all(|h| h.satisfied_by(&w, T::FEASIBILITY_TOL))
        {
            continue;
        }
        for x in w.iter_mut() {
            if x.abs() <= T::DEDUP_TOL {
                *x = T::zero();
            }
        }
        let duplicate = vertices.iter().any(|v| {
            v.iter()
                .zip(&w)
                .all(|(&a, &b)| (a - b).abs() <= T::DEDUP_TOL)
        });
        if !duplicate {
            vertices.push(w);
        }
    }

    if vertices.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    vertices.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.partial_cmp(y).unwrap_or(Ordering::Equal))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    });

    let affine_dim = rank(
        vertices[1..]
            .iter()
            .map(|v| v.iter().zip(&vertices[0]).map(|(&a, &b)| a - b).collect())
            .collect(),
    );
    Ok(WeightPolytope {
        constraint_set: cs.clone(),
        vertices: vertices.into_iter().map(WeightVector).collect(),
        affine_dim,
    })
}

/// Arithmetic mean of the vertices; lies in the relative interior of `W(C)`.
pub fn barycenter<T: Scalar>(poly: &WeightPolytope<T>) -> WeightVector<T> {
    let d = poly.dims();
    let q = T::from_usize(poly.q()).expect("vertex count fits scalar");
    let mut mean = vec![T::zero(); d];
    for v in poly.vertices() {
        for (m, &x) in mean.iter_mut().zip(v.as_slice()) {
            *m = *m + x;
        }
    }
    WeightVector(mean.into_iter().map(|m| m / q).collect())
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve_square<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let (p, max) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(Ordering::Equal))?;
        if max <= T::PIVOT_TOL {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f == T::zero() {
                continue;
            }
            for c in col..n {
                a[r][c] = a[r][c] - f * a[col][c];
            }
            b[r] = b[r] - f * b[col];
        }
    }
    let mut x = vec![T::zero(); n];
    for r in (0..n).rev() {
        let s = (r + 1..n).fold(b[r], |acc, c| acc - a[r][c] * x[c]);
        x[r] = s / a[r][r];
    }
    Some(x)
}

fn rank<T: Scalar>(mut rows: Vec<Vec<T>>) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some((p, _)) = (rank..rows.len())
            .map(|r| (r, rows[r][col].abs()))
            .filter(|&(_, v)| v > T::DEDUP_TOL)
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(Ordering::Equal))
        else {
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            let f = rows[r][col] / rows[rank][col];
            for c in col..cols {
                rows[r][c] = rows[r][c] - f * rows[rank][c];
            }
        }
        rank += 1;
    }
    rank
}
