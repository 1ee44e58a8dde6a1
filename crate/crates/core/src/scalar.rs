//! Scalar abstraction shared by every operator in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point type the engine can run on.
///
/// Tolerances are per type: the `f64` values are the engine defaults, the
/// `f32` ones are widened to stay above single-precision round-off on
/// `[0,1]`-scaled data.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Constraint satisfaction slack for weight vectors and LP points.
    const FEASIBILITY_TOL: Self;
    /// Max-norm distance under which two polytope vertices are the same.
    const DEDUP_TOL: Self;
    /// Slack on the sign tests behind F-dominance and potential optimality.
    const DOMINANCE_TOL: Self;
    /// Magnitude below which a tableau entry is treated as zero.
    const PIVOT_TOL: Self;

    /// Converts an `f64` literal. Panics only for non-representable input.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const FEASIBILITY_TOL: Self = 1e-9;
    const DEDUP_TOL: Self = 1e-9;
    const DOMINANCE_TOL: Self = 1e-9;
    const PIVOT_TOL: Self = 1e-11;
}

impl Scalar for f32 {
    const FEASIBILITY_TOL: Self = 1e-5;
    const DEDUP_TOL: Self = 1e-5;
    const DOMINANCE_TOL: Self = 1e-5;
    const PIVOT_TOL: Self = 1e-6;
}
