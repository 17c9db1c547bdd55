//! Scalar abstraction for the floating-point parts of the pipeline.

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar the statistics, blur and metric code is generic
/// over: `f32` or `f64`. The crate root exports `f64`-concrete aliases for
/// the common types.
pub trait Real: Float + FromPrimitive + std::fmt::Debug + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts a finite `f64` into the working scalar.
#[inline]
pub(crate) fn real<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("finite f64 representable in Real scalar")
}
