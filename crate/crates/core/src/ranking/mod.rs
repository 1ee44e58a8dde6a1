//! Monotone scoring functions, scan-based top-k, and Fagin's FA and TA over
//! the sorted/random access model.

mod fagin;
mod scoring;

pub use fagin::{fa, ta, Aggregation, GradedObject, SortedList, TopK};
pub use scoring::{score, topk_scan, ScoringFunction};
