mod common;

use common::{family, suite};
use flexsky_core::{
    nd_selection, parallel_nd_selection, parallel_po_selection, po_selection, NdAlgorithm, PartitionPlan, PoAlgorithm,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parallel_nd_equals_sequential(seed: u64, n in 0usize..120, d in 2usize..=4, c in 0usize..=2, grid: bool, a in 0usize..7) {
        let (rel, cs) = suite(seed, n, d, c, grid);
        let fam = family(&cs);
        let algo = NdAlgorithm::ALL[a];
        let want = nd_selection(&rel, &fam, algo).unwrap().indices;
        for m in [1, 2, 4, 8, 200] {
            let plan = PartitionPlan::new(m).unwrap();
            prop_assert_eq!(&parallel_nd_selection(&rel, &fam, algo, plan).unwrap().indices, &want, "m={}", m);
        }
    }

    #[test]
    fn parallel_po_equals_sequential(seed: u64, n in 0usize..60, d in 2usize..=4, c in 0usize..=2, grid: bool, a in 0usize..8) {
        let (rel, cs) = suite(seed, n, d, c, grid);
        let fam = family(&cs);
        let algo = PoAlgorithm::ALL[a];
        let want = po_selection(&rel, &fam, algo).unwrap().indices;
        for m in [1, 2, 4, 8, 200] {
            let plan = PartitionPlan::new(m).unwrap();
            prop_assert_eq!(&parallel_po_selection(&rel, &fam, algo, plan).unwrap().indices, &want, "m={}", m);
        }
    }
}

#[test]
fn repeated_runs_identical() {
    let (rel, cs) = suite(11, 300, 3, 2, true);
    let fam = family(&cs);
    let plan = PartitionPlan::new(4).unwrap();
    let first = parallel_nd_selection(&rel, &fam, NdAlgorithm::Sve1f, plan).unwrap();
    for _ in 0..5 {
        assert_eq!(parallel_nd_selection(&rel, &fam, NdAlgorithm::Sve1f, plan).unwrap(), first);
    }
}
