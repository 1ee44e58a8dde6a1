//! Pareto dominance, the skyline, and ε-dominance.

use crate::dataset::{Relation, Tuple};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stats::{OpStats, Selection};

/// `a` is no worse everywhere and strictly better somewhere (minimization).
#[inline]
pub(crate) fn dominates<T: Scalar>(a: &[T], b: &[T]) -> bool {
    let mut strict = false;
    for (&x, &y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        strict |= x < y;
    }
    strict
}

pub fn pareto_dominates<T: Scalar>(t: &Tuple<T>, s: &Tuple<T>) -> Result<bool> {
    check_dims(t, s)?;
    Ok(dominates(&t.values, &s.values))
}

fn check_dims<T: Scalar>(t: &Tuple<T>, s: &Tuple<T>) -> Result<()> {
    if t.dims() != s.dims() {
        return Err(Error::DimensionMismatch {
            expected: t.dims(),
            found: s.dims(),
        });
    }
    Ok(())
}

/// Block-nested-loops skyline over `candidates`; returns positions sorted
/// ascending.
pub(crate) fn bnl<T: Scalar>(
    rel: &Relation<T>,
    candidates: impl IntoIterator<Item = usize>,
    stats: &mut OpStats,
) -> Vec<usize> {
    let tuples = rel.tuples();
    let mut window: Vec<usize> = Vec::new();
    for t in candidates {
        let tv = &tuples[t].values;
        let mut dominated = false;
        for &w in &window {
            stats.pareto_tests += 1;
            if dominates(&tuples[w].values, tv) {
                dominated = true;
                break;
            }
        }
        if dominated {
            continue;
        }
        window.retain(|&w| {
            stats.pareto_tests += 1;
            !dominates(tv, &tuples[w].values)
        });
        window.push(t);
    }
    window.sort_unstable();
    window
}

pub fn skyline_selection<T: Scalar>(rel: &Relation<T>) -> Selection {
    let mut stats = OpStats::default();
    let indices = bnl(rel, 0..rel.len(), &mut stats);
    Selection { indices, stats }
}

/// Tuples not dominated by any other tuple, in input order.
pub fn skyline<T: Scalar>(rel: &Relation<T>) -> Vec<Tuple<T>> {
    rel.select(&skyline_selection(rel).indices)
}

/// Parameters of ε-dominance.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonSpec<T> {
    weights: Vec<T>,
    epsilon: T,
    /// Require `t1[j] < t2[j]` (instead of `<=`) in the existential clause.
    strict_exists: bool,
}

impl<T: Scalar> EpsilonSpec<T> {
    pub fn new(weights: Vec<T>, epsilon: T, strict_exists: bool) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no ε-weights".into()));
        }
        if let Some(w) = weights.iter().find(|&&w| !(w > T::zero() && w <= T::one())) {
            return Err(Error::InvalidWeights(format!("ε-weight {w} outside (0,1]")));
        }
        if !(epsilon.abs() <= T::one()) {
            return Err(Error::InvalidEpsilon(epsilon.as_f64()));
        }
        Ok(Self {
            weights,
            epsilon,
            strict_exists,
        })
    }

    pub fn unit(dims: usize, epsilon: T, strict_exists: bool) -> Result<Self> {
        Self::new(vec![T::one(); dims], epsilon, strict_exists)
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn strict_exists(&self) -> bool {
        self.strict_exists
    }

    #[inline]
    fn holds(&self, a: &[T], b: &[T]) -> bool {
        let relaxed = a
            .iter()
            .zip(b)
            .zip(&self.weights)
            .all(|((&x, &y), &w)| x * w <= y * w + self.epsilon);
        relaxed
            && a.iter().zip(b).any(|(&x, &y)| {
                if self.strict_exists {
                    x < y
                } else {
                    x <= y
                }
            })
    }
}

pub fn eps_dominates<T: Scalar>(t1: &Tuple<T>, t2: &Tuple<T>, spec: &EpsilonSpec<T>) -> Result<bool> {
    if t1.id == t2.id {
        return Err(Error::SelfComparison(t1.id.clone()));
    }
    check_dims(t1, t2)?;
    if spec.weights.len() != t1.dims() {
        return Err(Error::DimensionMismatch {
            expected: t1.dims(),
            found: spec.weights.len(),
        });
    }
    Ok(spec.holds(&t1.values, &t2.values))
}

pub fn eps_skyline_selection<T: Scalar>(rel: &Relation<T>, spec: &EpsilonSpec<T>) -> Result<Selection> {
    if spec.weights.len() != rel.dims() {
        return Err(Error::DimensionMismatch {
            expected: rel.dims(),
            found: spec.weights.len(),
        });
    }
    let tuples = rel.tuples();
    let mut stats = OpStats::default();
    let indices = (0..tuples.len())
        .filter(|&t| {
            !(0..tuples.len()).any(|s| {
                if s == t {
                    return false;
                }
                stats.pareto_tests += 1;
                spec.holds(&tuples[s].values, &tuples[t].values)
            })
        })
        .collect();
    Ok(Selection { indices, stats })
}

/// Tuples not ε-dominated by any other tuple, in input order.
pub fn eps_skyline<T: Scalar>(rel: &Relation<T>, spec: &EpsilonSpec<T>) -> Result<Vec<Tuple<T>>> {
    Ok(rel.select(&eps_skyline_selection(rel, spec)?.indices))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(id: &str, v: &[f64]) -> Tuple<f64> {
        Tuple::new(id, v.to_vec())
    }

    #[test]
    fn pareto_examples() {
        assert!(pareto_dominates(&t("a", &[0.1, 0.1]), &t("b", &[0.2, 0.2])).unwrap());
        assert!(!pareto_dominates(&t("a", &[0.3, 0.3]), &t("b", &[0.3, 0.3])).unwrap());
        assert!(!pareto_dominates(&t("a", &[0.1, 0.9]), &t("b", &[0.9, 0.1])).unwrap());
        assert!(pareto_dominates(&t("a", &[0.1]), &t("b", &[0.9, 0.1])).is_err());
    }

    #[test]
    fn skyline_edge_cases() {
        let single = Relation::from_rows(vec![vec![0.4, 0.4]]).unwrap();
        assert_eq!(skyline(&single).len(), 1);
        let dup = Relation::from_rows(vec![vec![0.4, 0.4], vec![0.4, 0.4], vec![0.5, 0.5]]).unwrap();
        let sky = skyline(&dup);
        assert_eq!(sky.iter().map(|t| t.id.as_str()).collect::<Vec<_>>(), ["t0", "t1"]);
    }

    #[test]
    fn skyline_preserves_input_order() {
        let rel = Relation::from_rows(vec![
            vec![0.9, 0.1],
            vec![0.5, 0.5],
            vec![0.6, 0.6],
            vec![0.1, 0.9],
        ])
        .unwrap();
        let ids: Vec<_> = skyline(&rel).into_iter().map(|t| t.id).collect();
        assert_eq!(ids, ["t0", "t1", "t3"]);
    }

    #[test]
    fn eps_examples() {
        let a = t("a", &[0.2, 0.2]);
        let b = t("b", &[0.3, 0.1]);
        let loose = EpsilonSpec::unit(2, 0.15, false).unwrap();
        assert!(eps_dominates(&a, &b, &loose).unwrap());
        let tight = EpsilonSpec::unit(2, 0.05, false).unwrap();
        assert!(!eps_dominates(&a, &b, &tight).unwrap());
        assert!(matches!(
            eps_dominates(&a, &a, &loose),
            Err(Error::SelfComparison(_))
        ));
    }

    #[test]
    fn eps_zero_strict_is_pareto() {
        let spec = EpsilonSpec::unit(2, 0.0, true).unwrap();
        let pts = [[0.1, 0.1], [0.2, 0.2], [0.3, 0.3], [0.1, 0.9], [0.9, 0.1]];
        for (i, p) in pts.iter().enumerate() {
            for (j, q) in pts.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (a, b) = (t("a", p), t("b", q));
                assert_eq!(
                    eps_dominates(&a, &b, &spec).unwrap(),
                    pareto_dominates(&a, &b).unwrap()
                );
            }
        }
    }

    #[test]
    fn eps_one_empties_skyline() {
        let rel = Relation::from_rows(vec![vec![0.1, 0.9], vec![0.9, 0.1], vec![0.5, 0.5]]).unwrap();
        let spec = EpsilonSpec::unit(2, 1.0, false).unwrap();
        assert!(eps_skyline(&rel, &spec).unwrap().is_empty());
    }

    #[test]
    fn spec_validation() {
        assert!(EpsilonSpec::new(vec![0.0, 1.0], 0.1, false).is_err());
        assert!(EpsilonSpec::new(vec![1.0, 1.0], 1.5, false).is_err());
        assert!(EpsilonSpec::new(vec![0.5, 1.0], -1.0, true).is_ok());
    }
}
