//! Weight constraints, the weight polytope `W(C)` and the LP solver used by
//! the F-dominance and potential-optimality tests.

mod lp;
mod polytope;

pub use lp::{solve_lp, Bounds, Cmp, LpOutcome, LpProblem, LpRow, LpStatus, Sense};
pub use polytope::{
    barycenter, enumerate_vertices, ConstraintSet, LinearConstraint, WeightPolytope, WeightVector,
};
