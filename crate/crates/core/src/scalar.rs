//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst};

/// Real floating-point type the physics and linear algebra are generic over.
///
/// Implemented for `f32` and `f64`. The tolerances used throughout the tests
/// assume `f64`; `f32` works but only to single precision.
pub trait Scalar:
    Float + FloatConst + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this type.
    fn lit(x: f64) -> Self;

    fn as_f64(self) -> f64;

    /// Machine epsilon, used for stopping criteria.
    fn eps() -> Self {
        <Self as Float>::epsilon()
    }
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn lit(x: f64) -> Self {
                x as $t
            }

            #[inline]
            fn as_f64(self) -> f64 {
                self as f64
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);

/// `1 - e^{-x}` without cancellation for small `x`.
#[inline]
pub fn one_minus_exp_neg<T: Scalar>(x: T) -> T {
    -(-x).exp_m1()
}
