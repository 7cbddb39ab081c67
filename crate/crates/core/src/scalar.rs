use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type the geometry, layout and metric code is generic over: f32 or f64.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Relative tolerance (times the outer radius) for "point lies on circle" checks.
    fn on_circle_tolerance() -> Self;

    /// Converts an f64 literal. Panics only if the value is not representable at all,
    /// which cannot happen for finite inputs on f32/f64.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn on_circle_tolerance() -> Self {
        1e-6
    }
}

impl Scalar for f32 {
    fn on_circle_tolerance() -> Self {
        1e-3
    }
}
