//! Seeded synthetic relations and constraint sets.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Exp1, Normal};

use crate::dataset::{Relation, Schema, Tuple};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::weightspace::{ConstraintSet, LinearConstraint};

/// Attribute correlation of a generated relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distribution {
    Uniform,
    Correlated,
    Anticorrelated,
}

impl Distribution {
    pub fn name(self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Correlated => "correlated",
            Distribution::Anticorrelated => "anticorrelated",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uniform" | "ind" | "independent" => Ok(Distribution::Uniform),
            "correlated" | "corr" => Ok(Distribution::Correlated),
            "anticorrelated" | "anti" => Ok(Distribution::Anticorrelated),
            other => Err(Error::UnknownDistribution(other.to_string())),
        }
    }
}

const SPREAD: f64 = 0.05;

fn sample_row(rng: &mut ChaCha8Rng, d: usize, dist: Distribution, noise: &Normal<f64>) -> Vec<f64> {
    match dist {
        Distribution::Uniform => (0..d).map(|_| rng.random::<f64>()).collect(),
        Distribution::Correlated => loop {
            let centre: f64 = rng.random();
            let row: Vec<f64> = (0..d).map(|_| centre + noise.sample(rng)).collect();
            if row.iter().all(|x| (0.0..=1.0).contains(x)) {
                break row;
            }
        },
        // points near the hyperplane Σx = d/2, spread along it
        Distribution::Anticorrelated => loop {
            let level = 0.5 + noise.sample(rng);
            let u: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
            let mean = u.iter().sum::<f64>() / d as f64;
            let row: Vec<f64> = u.iter().map(|x| level + x - mean).collect();
            if row.iter().all(|x| (0.0..=1.0).contains(x)) {
                break row;
            }
        },
    }
}

/// `n` tuples over `d` minimized attributes in `[0,1]`, ids `t0..`.
/// Identical arguments give identical relations.
pub fn generate<T: Scalar>(n: usize, d: usize, dist: Distribution, seed: u64) -> Result<Relation<T>> {
    let schema = Schema::minimizing(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, SPREAD).expect("valid normal");
    let tuples = (0..n)
        .map(|i| {
            let row = sample_row(&mut rng, d, dist, &noise);
            Tuple::new(format!("t{i}"), row.into_iter().map(T::of).collect())
        })
        .collect();
    Relation::new(schema, tuples)
}

/// A uniformly random point of the weight simplex.
pub fn random_weights<T: Scalar, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<T> {
    let e: Vec<f64> = (0..d).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| T::of(x / s)).collect()
}

/// `c` random constraints satisfied by a hidden random weight vector, so the
/// set is always feasible. Coefficients lie in `[-1,1]`.
pub fn random_constraints<T: Scalar, R: Rng + ?Sized>(d: usize, c: usize, rng: &mut R) -> Result<ConstraintSet<T>> {
    let w0: Vec<f64> = random_weights(d, rng);
    let rows = (0..c)
        .map(|_| {
            let a: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..=1.0)).collect();
            let k = a.iter().zip(&w0).map(|(x, w)| x * w).sum::<f64>() + rng.random_range(0.0..0.2);
            LinearConstraint::new(a.into_iter().map(T::of).collect(), T::of(k))
        })
        .collect();
    ConstraintSet::new(d, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pearson(rel: &Relation<f64>) -> f64 {
        let n = rel.len() as f64;
        let xs: Vec<f64> = rel.tuples().iter().map(|t| t.values[0]).collect();
        let ys: Vec<f64> = rel.tuples().iter().map(|t| t.values[1]).collect();
        let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
        let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
        cov / (vx * vy).sqrt()
    }

    #[test]
    fn deterministic_and_bounded() {
        for dist in [Distribution::Uniform, Distribution::Correlated, Distribution::Anticorrelated] {
            let a = generate::<f64>(50, 3, dist, 42).unwrap();
            let b = generate::<f64>(50, 3, dist, 42).unwrap();
            assert_eq!(a.tuples(), b.tuples());
            assert!(a.tuples().iter().flat_map(|t| &t.values).all(|x| (0.0..=1.0).contains(x)));
        }
    }

    #[test]
    fn correlation_sign() {
        let anti = generate::<f64>(10_000, 2, Distribution::Anticorrelated, 7).unwrap();
        assert!(pearson(&anti) < 0.0);
        let corr = generate::<f64>(10_000, 2, Distribution::Correlated, 7).unwrap();
        assert!(pearson(&corr) > 0.0);
    }

    #[test]
    fn single_row() {
        assert_eq!(generate::<f32>(1, 4, Distribution::Uniform, 1).unwrap().len(), 1);
    }

    #[test]
    fn constraints_feasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for c in 0..4 {
            let cs: ConstraintSet<f64> = random_constraints(4, c, &mut rng).unwrap();
            assert_eq!(cs.len(), c);
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!("Anti".parse::<Distribution>().unwrap(), Distribution::Anticorrelated);
        assert!("zipf".parse::<Distribution>().is_err());
    }
}
