//! Preference queries over relations of numeric tuples: skyline, top-k,
//! Fagin's FA/TA, ε-skyline, and the flexible-skyline operators ND and PO
//! under linear constraints on scoring weights.
//!
//! All values are minimized. Every type is generic over the [`Scalar`]
//! (`f64` or `f32`); the unsuffixed aliases at the crate root fix `f64` and
//! the `*32` aliases fix `f32`.
//!
//! ```
//! use flexsky_core::{nd, skyline, ConstraintSet, FlexFamily, LinearConstraint, NdAlgorithm, Relation};
//!
//! let rel = Relation::from_rows(vec![vec![0.2, 0.6], vec![0.4, 0.5], vec![0.9, 0.9]]).unwrap();
//! assert_eq!(skyline(&rel).len(), 2);
//!
//! // first attribute weighs at least 0.8
//! let cs = ConstraintSet::new(2, vec![LinearConstraint::at_least(vec![1.0, 0.0], 0.8)]).unwrap();
//! let fam = FlexFamily::linear(cs).unwrap();
//! assert_eq!(nd(&rel, &fam, NdAlgorithm::Sve1f).unwrap().len(), 1);
//! ```

pub mod dataset;
pub mod dominance;
pub mod error;
pub mod flexnd;
pub mod flexpo;
pub mod parallel;
pub mod ranking;
pub mod scalar;
pub mod stats;
pub mod synth;
pub mod transform;
pub mod weightspace;

pub use dataset::{load_csv, normalize, read_csv, Direction, Schema};
pub use dominance::{eps_dominates, eps_skyline, eps_skyline_selection, pareto_dominates, skyline, skyline_selection};
pub use error::{Error, Result};
pub use flexnd::{f_dominates_lp, f_dominates_region, nd, nd_selection, NdAlgorithm};
pub use flexpo::{po, po_selection, po_test_dual, po_test_primal, PoAlgorithm};
pub use parallel::{parallel_nd, parallel_nd_selection, parallel_po, parallel_po_selection, PartitionPlan};
pub use ranking::{fa, score, ta, topk_scan, Aggregation, GradedObject, TopK};
pub use scalar::Scalar;
pub use stats::{OpStats, Selection};
pub use synth::{generate, Distribution};
pub use weightspace::{barycenter, enumerate_vertices, solve_lp, Bounds, Cmp, LpOutcome, LpStatus, Sense};

pub type Tuple = dataset::Tuple<f64>;
pub type Relation = dataset::Relation<f64>;
pub type Transform = transform::Transform<f64>;
pub type EpsilonSpec = dominance::EpsilonSpec<f64>;
pub type ScoringFunction = ranking::ScoringFunction<f64>;
pub type SortedList = ranking::SortedList<f64>;
pub type LinearConstraint = weightspace::LinearConstraint<f64>;
pub type ConstraintSet = weightspace::ConstraintSet<f64>;
pub type WeightVector = weightspace::WeightVector<f64>;
pub type WeightPolytope = weightspace::WeightPolytope<f64>;
pub type LpProblem = weightspace::LpProblem<f64>;
pub type FlexFamily = flexnd::FlexFamily<f64>;
pub type ConvexCombination = flexpo::ConvexCombination<f64>;

pub type Tuple32 = dataset::Tuple<f32>;
pub type Relation32 = dataset::Relation<f32>;
pub type Transform32 = transform::Transform<f32>;
pub type EpsilonSpec32 = dominance::EpsilonSpec<f32>;
pub type ScoringFunction32 = ranking::ScoringFunction<f32>;
pub type SortedList32 = ranking::SortedList<f32>;
pub type LinearConstraint32 = weightspace::LinearConstraint<f32>;
pub type ConstraintSet32 = weightspace::ConstraintSet<f32>;
pub type WeightVector32 = weightspace::WeightVector<f32>;
pub type WeightPolytope32 = weightspace::WeightPolytope<f32>;
pub type LpProblem32 = weightspace::LpProblem<f32>;
pub type FlexFamily32 = flexnd::FlexFamily<f32>;
pub type ConvexCombination32 = flexpo::ConvexCombination<f32>;
