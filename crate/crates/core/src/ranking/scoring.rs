use std::cmp::Ordering;

use crate::dataset::{Relation, Tuple};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::transform::Transform;
use crate::weightspace::WeightVector;

/// `f(t) = Σ w_i · g_i(t[i])`. Lower is better.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoringFunction<T> {
    weights: WeightVector<T>,
    transforms: Vec<Transform<T>>,
}

impl<T: Scalar> ScoringFunction<T> {
    pub fn new(weights: WeightVector<T>, transforms: Vec<Transform<T>>) -> Result<Self> {
        if weights.dims() != transforms.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.dims(),
                found: transforms.len(),
            });
        }
        Ok(Self {
            weights,
            transforms,
        })
    }

    pub fn linear(weights: WeightVector<T>) -> Self {
        let d = weights.dims();
        Self {
            weights,
            transforms: vec![Transform::Identity; d],
        }
    }

    pub fn weights(&self) -> &WeightVector<T> {
        &self.weights
    }

    pub fn transforms(&self) -> &[Transform<T>] {
        &self.transforms
    }

    pub fn dims(&self) -> usize {
        self.transforms.len()
    }

    #[inline]
    pub(crate) fn eval(&self, values: &[T]) -> T {
        self.weights
            .as_slice()
            .iter()
            .zip(&self.transforms)
            .zip(values)
            .fold(T::zero(), |acc, ((&w, g), &x)| acc + w * g.apply(x))
    }
}

pub fn score<T: Scalar>(f: &ScoringFunction<T>, t: &Tuple<T>) -> Result<T> {
    if t.dims() != f.dims() {
        return Err(Error::DimensionMismatch {
            expected: f.dims(),
            found: t.dims(),
        });
    }
    Ok(f.eval(&t.values))
}

/// The `k` lowest-scoring tuples in ascending score order, ties by id.
pub fn topk_scan<T: Scalar>(rel: &Relation<T>, f: &ScoringFunction<T>, k: usize) -> Result<Vec<(Tuple<T>, T)>> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if rel.dims() != f.dims() {
        return Err(Error::DimensionMismatch {
            expected: f.dims(),
            found: rel.dims(),
        });
    }
    let mut scored: Vec<(usize, T)> = rel
        .tuples()
        .iter()
        .enumerate()
        .map(|(i, t)| (i, f.eval(&t.values)))
        .collect();
    let tuples = rel.tuples();
    scored.sort_by(|a, b| {
        a.1.partial_cmp(&b.1)
            .unwrap_or(Ordering::Equal)
            .then_with(|| tuples[a.0].id.cmp(&tuples[b.0].id))
    });
    scored.truncate(k);
    Ok(scored
        .into_iter()
        .map(|(i, s)| (tuples[i].clone(), s))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[f64]) -> WeightVector<f64> {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn arithmetic_mean() {
        let f = ScoringFunction::linear(w(&[0.5, 0.5]));
        let s = score(&f, &Tuple::new("t", vec![0.2, 0.4])).unwrap();
        assert!((s - 0.3).abs() < 1e-15);
    }

    #[test]
    fn degenerate_weight() {
        let f = ScoringFunction::new(w(&[1.0, 0.0]), vec![Transform::Power(3.0), Transform::Log]).unwrap();
        let s = score(&f, &Tuple::new("t", vec![0.5, 0.9])).unwrap();
        assert!((s - 0.125).abs() < 1e-15);
    }

    #[test]
    fn squared_transform() {
        let f = ScoringFunction::new(w(&[0.5, 0.5]), vec![Transform::Power(2.0); 2]).unwrap();
        let s = score(&f, &Tuple::new("t", vec![0.2, 0.4])).unwrap();
        assert!((s - 0.10).abs() < 1e-15);
    }

    #[test]
    fn topk_ties_and_overflow() {
        let rel = Relation::from_rows(vec![vec![0.5, 0.5], vec![0.2, 0.8], vec![0.8, 0.2], vec![0.9, 0.9]])
            .unwrap();
        let f = ScoringFunction::linear(w(&[0.5, 0.5]));
        let top = topk_scan(&rel, &f, 3).unwrap();
        let ids: Vec<_> = top.iter().map(|(t, _)| t.id.as_str()).collect();
        assert_eq!(ids, ["t0", "t1", "t2"]);
        assert_eq!(topk_scan(&rel, &f, 10).unwrap().len(), 4);
        assert!(matches!(topk_scan(&rel, &f, 0), Err(Error::ZeroK)));
    }
}
