//! Scalar abstraction shared by every numerical kernel.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar the kernels are written against.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts a count into the scalar type.
    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Lossy conversion used for error payloads and reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `sin(πx)` with argument reduction, exact zeros at integers.
pub(crate) fn sin_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let mut r = x % two;
    if r < T::zero() {
        r = r + two;
    }
    // r in [0, 2)
    if r == T::zero() || r == T::one() {
        return T::zero();
    }
    if r > T::one() {
        -(T::PI() * (r - T::one())).sin()
    } else {
        (T::PI() * r).sin()
    }
}

/// True when `x` is `0, -1, -2, ...`.
pub(crate) fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}
