mod common;

use flexsky_core::synth::{random_constraints, random_weights};
use flexsky_core::{barycenter, enumerate_vertices, solve_lp, ConstraintSet32, LpOutcome, LpProblem, Sense};
use flexsky_core::{Cmp, ConstraintSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, d: usize, c: usize) -> ConstraintSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_constraints(d, c, &mut rng).unwrap()
}

/// Weight vectors of `cs` found by rejection sampling on the simplex.
fn samples(cs: &ConstraintSet, seed: u64, want: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..20_000 {
        let w: Vec<f64> = random_weights(cs.dims(), &mut rng);
        if cs.contains(&w) {
            out.push(w);
            if out.len() == want {
                break;
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vertices_feasible_and_distinct(seed: u64, d in 1usize..=5, c in 0usize..=3) {
        let cs = instance(seed, d, c);
        let poly = enumerate_vertices(&cs).unwrap();
        prop_assert!(poly.q() >= 1);
        for (i, v) in poly.vertices().iter().enumerate() {
            prop_assert!(cs.contains(v.as_slice()));
            for u in &poly.vertices()[i + 1..] {
                let gap = u.as_slice().iter().zip(v.as_slice()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                prop_assert!(gap > 1e-9);
            }
        }
        prop_assert!(cs.contains(barycenter(&poly).as_slice()));
    }

    #[test]
    fn lp_optimum_matches_best_vertex(seed: u64, d in 2usize..=5, c in 0usize..=3, obj_seed: u64) {
        let cs = instance(seed, d, c);
        let poly = enumerate_vertices(&cs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(obj_seed);
        let obj: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        for sense in [Sense::Minimize, Sense::Maximize] {
            let mut lp = LpProblem::new(sense, obj.clone()).row(vec![1.0; d], Cmp::Eq, 1.0);
            for k in cs.constraints() {
                lp.push_row(k.coefficients.clone(), Cmp::Le, k.bound);
            }
            let LpOutcome::Optimal { value, point } = solve_lp(&lp).unwrap() else {
                panic!("feasible bounded LP");
            };
            prop_assert!(cs.contains(&point));
            let at = poly.vertices().iter().map(|v| common::score(&obj, v.as_slice()));
            let best = match sense {
                Sense::Minimize => at.fold(f64::INFINITY, f64::min),
                Sense::Maximize => at.fold(f64::NEG_INFINITY, f64::max),
            };
            prop_assert!((value - best).abs() < 1e-9, "{value} vs {best}");
        }
    }

    /// Every feasible weight vector is a convex combination of the vertices.
    #[test]
    fn samples_in_vertex_hull(seed: u64, d in 2usize..=4, c in 0usize..=2) {
        let cs = instance(seed, d, c);
        let poly = enumerate_vertices(&cs).unwrap();
        let q = poly.q();
        for w in samples(&cs, seed ^ 0x5eed, 10) {
            let mut lp = LpProblem::feasibility(q).row(vec![1.0; q], Cmp::Eq, 1.0);
            for i in 0..d {
                let row = poly.vertices().iter().map(|v| v.as_slice()[i]).collect();
                lp.push_row(row, Cmp::Eq, w[i]);
            }
            prop_assert!(matches!(solve_lp(&lp).unwrap(), LpOutcome::Optimal { .. }), "{w:?}");
        }
    }

    #[test]
    fn single_precision_agrees(seed: u64, d in 2usize..=4, c in 0usize..=2) {
        let cs = instance(seed, d, c);
        let cs32 = ConstraintSet32::new(
            d,
            cs.constraints()
                .iter()
                .map(|k| flexsky_core::LinearConstraint32::new(
                    k.coefficients.iter().map(|&x| x as f32).collect(),
                    k.bound as f32,
                ))
                .collect(),
        );
        // rounding to f32 may empty a nearly degenerate polytope; skip those
        let Ok(cs32) = cs32 else { return Ok(()) };
        let b64 = barycenter(&enumerate_vertices(&cs).unwrap());
        let b32 = barycenter(&enumerate_vertices(&cs32).unwrap());
        let poly64 = enumerate_vertices(&cs).unwrap();
        let poly32 = enumerate_vertices(&cs32).unwrap();
        if poly64.q() == poly32.q() {
            for (x, y) in b64.as_slice().iter().zip(b32.as_slice()) {
                prop_assert!((x - *y as f64).abs() < 1e-3);
            }
        }
    }
}
