use flexsky_core::{fa, score, ta, topk_scan, Aggregation, GradedObject, Relation, ScoringFunction, SortedList, Transform, Tuple, WeightVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `m` lists over a universe of `n` objects with random grades.
fn lists(seed: u64, m: usize, n: usize, coarse: bool) -> (Vec<SortedList>, Vec<Vec<f64>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grades: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    let g: f64 = rng.random();
                    if coarse { (g * 5.0).round() / 5.0 } else { g }
                })
                .collect()
        })
        .collect();
    let lists = (0..m)
        .map(|i| {
            let entries = grades
                .iter()
                .enumerate()
                .map(|(o, g)| GradedObject { id: format!("o{o:03}"), grade: g[i] })
                .collect();
            SortedList::new(i, entries).unwrap()
        })
        .collect();
    (lists, grades)
}

fn aggregation(kind: u8, m: usize, seed: u64) -> Aggregation<f64> {
    match kind % 3 {
        0 => Aggregation::Min,
        1 => Aggregation::Avg,
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Aggregation::weighted((0..m).map(|_| rng.random::<f64>()).collect()).unwrap()
        }
    }
}

/// Sorted aggregated grades of the true top-k.
fn brute(grades: &[Vec<f64>], agg: &Aggregation<f64>, k: usize) -> Vec<f64> {
    let mut all: Vec<f64> = grades.iter().map(|g| agg.apply(g)).collect();
    all.sort_by(|a, b| b.partial_cmp(a).unwrap());
    all.truncate(k);
    all
}

fn grades_of(items: &[GradedObject<f64>]) -> Vec<f64> {
    items.iter().map(|o| o.grade).collect()
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fa_ta_match_brute_force(
        seed: u64, m in 1usize..=4, n in 1usize..=200, k in 1usize..=10, kind: u8, coarse: bool,
    ) {
        let (lists, grades) = lists(seed, m, n, coarse);
        let agg = aggregation(kind, m, seed);
        let want = brute(&grades, &agg, k);
        let f = fa(&lists, &agg, k).unwrap();
        let t = ta(&lists, &agg, k).unwrap();
        prop_assert!(close(&grades_of(&f.items), &want), "FA {:?} vs {:?}", grades_of(&f.items), want);
        prop_assert!(close(&grades_of(&t.items), &want), "TA {:?} vs {:?}", grades_of(&t.items), want);
        prop_assert!(t.stats.halt_depth <= f.stats.halt_depth);
        prop_assert!(t.stats.halt_depth as usize <= n);
        // each reported grade is the object's true aggregate
        for o in t.items.iter().chain(&f.items) {
            let idx: usize = o.id[1..].parse().unwrap();
            prop_assert!((agg.apply(&grades[idx]) - o.grade).abs() < 1e-12);
        }
    }

    #[test]
    fn topk_scan_matches_sort(seed: u64, n in 1usize..100, d in 1usize..5, k in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| rng.random()).collect()).collect();
        let rel = Relation::from_rows(rows.clone()).unwrap();
        let w = WeightVector::normalized((0..d).map(|_| rng.random::<f64>() + 0.01).collect()).unwrap();
        let f = ScoringFunction::linear(w.clone());
        let got: Vec<f64> = topk_scan(&rel, &f, k).unwrap().into_iter().map(|(_, s)| s).collect();
        let mut all: Vec<f64> = rows.iter().map(|r| r.iter().zip(w.as_slice()).map(|(a, b)| a * b).sum()).collect();
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        all.truncate(k);
        prop_assert!(close(&got, &all));
    }

    /// Raising any attribute of a tuple never lowers its score.
    #[test]
    fn score_monotone(
        v in prop::collection::vec(0.0f64..=1.0, 3), bump in 0.0f64..=1.0, at in 0usize..3,
        raw in prop::collection::vec(0.0f64..=1.0, 3), p in 0.1f64..4.0,
    ) {
        prop_assume!(raw.iter().sum::<f64>() > 0.0);
        let w = WeightVector::normalized(raw).unwrap();
        let tf = vec![Transform::Identity, Transform::power(p).unwrap(), Transform::Log];
        let f = ScoringFunction::new(w, tf).unwrap();
        let mut u = v.clone();
        u[at] = (u[at] + bump).min(1.0);
        let (a, b) = (score(&f, &Tuple::new("a", v)).unwrap(), score(&f, &Tuple::new("b", u)).unwrap());
        prop_assert!(a <= b + 1e-12, "{a} > {b}");
    }
}

/// Hand-simulated three-object instance where TA stops at depth 2 of 3.
#[test]
fn ta_halts_early_on_fixture() {
    let mk = |i, e: &[(&str, f64)]| {
        SortedList::new(i, e.iter().map(|&(id, grade)| GradedObject { id: id.into(), grade }).collect()).unwrap()
    };
    let lists = [
        mk(0, &[("a", 0.9), ("b", 0.8), ("c", 0.1)]),
        mk(1, &[("c", 0.9), ("b", 0.8), ("a", 0.1)]),
    ];
    let t = ta(&lists, &Aggregation::Min, 1).unwrap();
    assert_eq!(t.items[0].id, "b");
    assert_eq!(t.stats.halt_depth, 2);
    assert!(t.stats.halt_depth < lists[0].len() as u64);
}
