#![allow(dead_code)]

use flexsky_core::synth::random_constraints;
use flexsky_core::{generate, ConstraintSet, Distribution, FlexFamily, Relation, Schema, Tuple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-9;

/// A random relation and constraint set. With `grid`, values are rounded to
/// tenths and a few rows are duplicated, which produces ties everywhere.
pub fn suite(seed: u64, n: usize, d: usize, c: usize, grid: bool) -> (Relation, ConstraintSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = match rng.random_range(0..3) {
        0 => Distribution::Uniform,
        1 => Distribution::Correlated,
        _ => Distribution::Anticorrelated,
    };
    let base: Relation = generate(n, d, dist, rng.random()).unwrap();
    let mut rows: Vec<Vec<f64>> = base.tuples().iter().map(|t| t.values.clone()).collect();
    if grid {
        for r in &mut rows {
            for x in r.iter_mut() {
                *x = (*x * 10.0).round() / 10.0;
            }
        }
        for _ in 0..n / 10 {
            let i = rng.random_range(0..rows.len());
            rows.push(rows[i].clone());
        }
    }
    let tuples = rows
        .into_iter()
        .enumerate()
        .map(|(i, v)| Tuple::new(format!("t{i}"), v))
        .collect();
    let rel = Relation::new(Schema::minimizing(d).unwrap(), tuples).unwrap();
    let cs = random_constraints(d, c, &mut rng).unwrap();
    (rel, cs)
}

pub fn family(cs: &ConstraintSet) -> FlexFamily {
    FlexFamily::linear(cs.clone()).unwrap()
}

pub fn ids(tuples: &[Tuple]) -> Vec<String> {
    tuples.iter().map(|t| t.id.clone()).collect()
}

pub fn pareto(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) && a.iter().zip(b).any(|(x, y)| x < y)
}

/// Quadratic skyline.
pub fn skyline_oracle(rel: &Relation) -> Vec<usize> {
    let t = rel.tuples();
    (0..t.len())
        .filter(|&i| !(0..t.len()).any(|j| pareto(&t[j].values, &t[i].values)))
        .collect()
}

/// Quadratic ND through the LP F-dominance test.
pub fn nd_oracle(rel: &Relation, fam: &FlexFamily) -> Vec<usize> {
    let t = rel.tuples();
    (0..t.len())
        .filter(|&i| {
            !(0..t.len()).any(|j| j != i && flexsky_core::f_dominates_lp(&t[j], &t[i], fam).unwrap())
        })
        .collect()
}

pub fn score(w: &[f64], v: &[f64]) -> f64 {
    w.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Exact PO for `d = 2` with identity transforms, where the weight space is
/// the segment `w = (λ, 1-λ)`, `λ ∈ [lo, hi]`. `t` is PO iff the concave
/// piecewise-linear margin `min_j (s_j(λ) - t(λ))` is positive somewhere;
/// its maximum lies at an endpoint or at a crossing of two pieces.
pub fn po_oracle_2d(rel: &Relation, lo: f64, hi: f64) -> Vec<usize> {
    let t = rel.tuples();
    let line = |v: &[f64]| (v[1], v[0] - v[1]); // score = a + b λ
    (0..t.len())
        .filter(|&i| {
            let (ta, tb) = line(&t[i].values);
            let gaps: Vec<(f64, f64)> = (0..t.len())
                .filter(|&j| j != i)
                .filter_map(|j| {
                    let (sa, sb) = line(&t[j].values);
                    let (a, b) = (sa - ta, sb - tb);
                    let tied = (a + b * lo).abs() <= TOL && (a + b * hi).abs() <= TOL;
                    (!tied || pareto(&t[j].values, &t[i].values)).then_some((a, b))
                })
                .collect();
            if gaps.is_empty() {
                return true;
            }
            let mut cands = vec![lo, hi];
            for (x, &(a1, b1)) in gaps.iter().enumerate() {
                for &(a2, b2) in &gaps[x + 1..] {
                    if (b1 - b2).abs() > 1e-15 {
                        let l = (a2 - a1) / (b1 - b2);
                        if l > lo && l < hi {
                            cands.push(l);
                        }
                    }
                }
            }
            cands.iter().any(|&l| gaps.iter().map(|&(a, b)| a + b * l).fold(f64::INFINITY, f64::min) > TOL)
        })
        .collect()
}
