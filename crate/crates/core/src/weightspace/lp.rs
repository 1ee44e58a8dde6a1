//! Dense two-phase simplex with Bland's rule.
//!
//! The problems solved here are small (a handful of weight variables and at
//! most a few hundred rows), so the tableau is kept dense and explicit.
//! Pivoting is fully deterministic: identical input always produces an
//! identical pivot sequence.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpRow<T> {
    pub coeffs: Vec<T>,
    pub cmp: Cmp,
    pub rhs: T,
}

/// Variable bounds; `None` means unbounded on that side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds<T> {
    pub lower: Option<T>,
    pub upper: Option<T>,
}

impl<T: Scalar> Bounds<T> {
    pub fn nonneg() -> Self {
        Self {
            lower: Some(T::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        Self {
            lower: None,
            upper: None,
        }
    }

    pub fn between(lower: T, upper: T) -> Self {
        Self {
            lower: Some(lower),
            upper: Some(upper),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem<T> {
    pub sense: Sense,
    pub objective: Vec<T>,
    pub rows: Vec<LpRow<T>>,
    pub bounds: Vec<Bounds<T>>,
}

impl<T: Scalar> LpProblem<T> {
    /// All variables start non-negative.
    pub fn new(sense: Sense, objective: Vec<T>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            rows: Vec::new(),
            bounds: vec![Bounds::nonneg(); n],
        }
    }

    /// Pure feasibility problem over `vars` non-negative variables.
    pub fn feasibility(vars: usize) -> Self {
        Self::new(Sense::Minimize, vec![T::zero(); vars])
    }

    pub fn vars(&self) -> usize {
        self.objective.len()
    }

    pub fn row(mut self, coeffs: Vec<T>, cmp: Cmp, rhs: T) -> Self {
        self.push_row(coeffs, cmp, rhs);
        self
    }

    pub fn push_row(&mut self, coeffs: Vec<T>, cmp: Cmp, rhs: T) {
        self.rows.push(LpRow { coeffs, cmp, rhs });
    }

    pub fn with_bounds(mut self, var: usize, bounds: Bounds<T>) -> Self {
        self.bounds[var] = bounds;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { value: T, point: Vec<T> },
    Infeasible,
    Unbounded,
}

impl<T: Scalar> LpOutcome<T> {
    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Infeasible => LpStatus::Infeasible,
            LpOutcome::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<T> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[T]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

/// Original variable expressed over standard-form columns:
/// `x = offset + sum(coef * y[col])`.
struct VarMap<T> {
    offset: T,
    terms: Vec<(usize, T)>,
}

struct Tableau<T> {
    rows: usize,
    cols: usize,
    // row-major, `cols + 1` entries per row, rhs last
    data: Vec<T>,
    basis: Vec<usize>,
    // reduced costs, last entry holds minus the objective value
    obj: Vec<T>,
    first_artificial: usize,
    pivots: usize,
    limit: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl<T: Scalar> Tableau<T> {
    fn stride(&self) -> usize {
        self.cols + 1
    }

    fn at(&self, r: usize, c: usize) -> T {
        self.data[r * self.stride() + c]
    }

    fn rhs(&self, r: usize) -> T {
        self.at(r, self.cols)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let stride = self.stride();
        let p = self.data[r * stride + c];
        let (before, rest) = self.data.split_at_mut(r * stride);
        let (prow, after) = rest.split_at_mut(stride);
        for v in prow.iter_mut() {
            *v = *v / p;
        }
        prow[c] = T::one();
        for row in before.chunks_exact_mut(stride).chain(after.chunks_exact_mut(stride)) {
            let f = row[c];
            if f != T::zero() {
                for (v, &pv) in row.iter_mut().zip(prow.iter()) {
                    *v = *v - f * pv;
                }
                row[c] = T::zero();
            }
        }
        let f = self.obj[c];
        if f != T::zero() {
            for (v, &pv) in self.obj.iter_mut().zip(prow.iter()) {
                *v = *v - f * pv;
            }
            self.obj[c] = T::zero();
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Runs simplex iterations on the current objective row using Bland's
    /// rule; columns at or beyond `entering_limit` never enter.
    fn optimize(&mut self, entering_limit: usize) -> Result<Phase> {
        let eps = T::PIVOT_TOL;
        loop {
            if self.pivots > self.limit {
                return Err(Error::IterationLimit(self.limit));
            }
            let Some(enter) = (0..entering_limit).find(|&j| self.obj[j] < -eps) else {
                return Ok(Phase::Optimal);
            };
            let mut leave: Option<(usize, T)> = None;
            for r in 0..self.rows {
                let a = self.at(r, enter);
                if a <= eps {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((br, best)) => {
                        if ratio < best - eps
                            || (ratio <= best + eps && self.basis[r] < self.basis[br])
                        {
                            Some((r, ratio))
                        } else {
                            Some((br, best))
                        }
                    }
                };
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Ok(Phase::Unbounded),
            }
        }
    }
}

/// Solves a linear program exactly up to floating-point round-off.
pub fn solve_lp<T: Scalar>(problem: &LpProblem<T>) -> Result<LpOutcome<T>> {
    let n = problem.vars();
    if problem.bounds.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: problem.bounds.len(),
        });
    }
    if let Some(row) = problem.rows.iter().find(|r| r.coeffs.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: row.coeffs.len(),
        });
    }

    // Substitute bounded/free variables by non-negative standard columns.
    let mut maps = Vec::with_capacity(n);
    let mut std_cols = 0usize;
    let mut extra_rows: Vec<(usize, T)> = Vec::new();
    for b in &problem.bounds {
        let map = match (b.lower, b.upper) {
            (Some(l), u) => {
                let col = std_cols;
                std_cols += 1;
                if let Some(u) = u {
                    extra_rows.push((col, u - l));
                }
                VarMap {
                    offset: l,
                    terms: vec![(col, T::one())],
                }
            }
            (None, Some(u)) => {
                let col = std_cols;
                std_cols += 1;
                VarMap {
                    offset: u,
                    terms: vec![(col, -T::one())],
                }
            }
            (None, None) => {
                let col = std_cols;
                std_cols += 2;
                VarMap {
                    offset: T::zero(),
                    terms: vec![(col, T::one()), (col + 1, -T::one())],
                }
            }
        };
        maps.push(map);
    }

    // Standard-form rows with non-negative right-hand sides.
    let mut rows: Vec<(Vec<T>, Cmp, T)> = Vec::with_capacity(problem.rows.len() + extra_rows.len());
    for row in &problem.rows {
        let mut coeffs = vec![T::zero(); std_cols];
        let mut rhs = row.rhs;
        for (a, map) in row.coeffs.iter().zip(&maps) {
            if *a == T::zero() {
                continue;
            }
            rhs = rhs - *a * map.offset;
            for &(col, s) in &map.terms {
                coeffs[col] = coeffs[col] + *a * s;
            }
        }
        rows.push((coeffs, row.cmp, rhs));
    }
    for (col, ub) in extra_rows {
        let mut coeffs = vec![T::zero(); std_cols];
        coeffs[col] = T::one();
        rows.push((coeffs, Cmp::Le, ub));
    }
    for (coeffs, cmp, rhs) in rows.iter_mut() {
        if *rhs < T::zero() {
            coeffs.iter_mut().for_each(|v| *v = -*v);
            *rhs = -*rhs;
            *cmp = match *cmp {
                Cmp::Le => Cmp::Ge,
                Cmp::Ge => Cmp::Le,
                Cmp::Eq => Cmp::Eq,
            };
        }
    }

    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.1 != Cmp::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Cmp::Le).count();
    let first_slack = std_cols;
    let first_artificial = std_cols + n_slack;
    let cols = first_artificial + n_art;
    let stride = cols + 1;

    let mut data = vec![T::zero(); m * stride];
    let mut basis = vec![0usize; m];
    let mut next_slack = first_slack;
    let mut next_art = first_artificial;
    for (r, (coeffs, cmp, rhs)) in rows.iter().enumerate() {
        let base = r * stride;
        data[base..base + std_cols].copy_from_slice(coeffs);
        data[base + cols] = *rhs;
        match cmp {
            Cmp::Le => {
                data[base + next_slack] = T::one();
                basis[r] = next_slack;
                next_slack += 1;
            }
            Cmp::Ge => {
                data[base + next_slack] = -T::one();
                next_slack += 1;
                data[base + next_art] = T::one();
                basis[r] = next_art;
                next_art += 1;
            }
            Cmp::Eq => {
                data[base + next_art] = T::one();
                basis[r] = next_art;
                next_art += 1;
            }
        }
    }

    let mut tab = Tableau {
        rows: m,
        cols,
        data,
        basis,
        obj: vec![T::zero(); stride],
        first_artificial,
        pivots: 0,
        limit: 50 * (m + cols) + 1000,
    };

    // Phase 1: minimize the sum of artificials.
    if n_art > 0 {
        for j in first_artificial..cols {
            tab.obj[j] = T::one();
        }
        for r in 0..m {
            if tab.basis[r] >= first_artificial {
                for j in 0..stride {
                    tab.obj[j] = tab.obj[j] - tab.data[r * stride + j];
                }
            }
        }
        tab.optimize(cols)?;
        let infeasibility = -tab.obj[cols];
        if infeasibility > T::PIVOT_TOL * T::of(10.0) {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive zero-level artificials out of the basis where possible;
        // rows where that fails are redundant and stay pinned at zero.
        for r in 0..m {
            if tab.basis[r] < tab.first_artificial {
                continue;
            }
            if let Some(j) = (0..tab.first_artificial).find(|&j| tab.at(r, j).abs() > T::PIVOT_TOL) {
                tab.pivot(r, j);
            }
        }
    }

    // Phase 2 on the minimization form.
    let flip = match problem.sense {
        Sense::Minimize => T::one(),
        Sense::Maximize => -T::one(),
    };
    let mut cost = vec![T::zero(); stride];
    for (c, map) in problem.objective.iter().zip(&maps) {
        let c = *c * flip;
        for &(col, s) in &map.terms {
            cost[col] = cost[col] + c * s;
        }
    }
    tab.obj = cost.clone();
    for r in 0..m {
        let cb = cost[tab.basis[r]];
        if cb != T::zero() {
            for j in 0..stride {
                tab.obj[j] = tab.obj[j] - cb * tab.data[r * stride + j];
            }
        }
    }
    if let Phase::Unbounded = tab.optimize(first_artificial)? {
        return Ok(LpOutcome::Unbounded);
    }

    let mut y = vec![T::zero(); cols];
    for r in 0..m {
        y[tab.basis[r]] = tab.rhs(r);
    }
    let point: Vec<T> = maps
        .iter()
        .map(|map| {
            map.terms
                .iter()
                .fold(map.offset, |acc, &(col, s)| acc + s * y[col])
        })
        .collect();
    let value = problem
        .objective
        .iter()
        .zip(&point)
        .fold(T::zero(), |acc, (&c, &x)| acc + c * x);
    Ok(LpOutcome::Optimal { value, point })
}
