//! Floating scalar abstraction for the numeric kernels.

use num_traits::{Float, FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};

/// Floating-point scalar the kernels are generic over. `f32` and `f64`
/// both qualify; the crate-root aliases fix `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Lossy-but-total conversion from `f64`; every `Scalar` admits it.
#[inline]
pub(crate) fn s<S: Scalar>(x: f64) -> S {
    S::from_f64(x).expect("f64 converts into every supported scalar")
}

/// Total conversion back to `f64` for reporting edges.
#[inline]
pub(crate) fn to_f64<S: Scalar>(x: S) -> f64 {
    x.to_f64().expect("every supported scalar converts into f64")
}
