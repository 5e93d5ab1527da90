//! Scalar abstraction: any floating-point type with `num_traits` support.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the numeric kernels are generic over.
///
/// `f32` and `f64` both implement it; accuracy contracts in the crate
/// documentation are stated for `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64` (exact for `f64` itself).
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 converts into every Scalar")
    }

    /// Conversion from a usize index.
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).unwrap_or_else(|| Self::of(n as f64))
    }

    /// Lossy conversion to `f64` (exact for `f64` itself).
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("every Scalar converts into f64")
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}
