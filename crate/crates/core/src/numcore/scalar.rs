use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point element type used throughout the crate: `f32` or `f64`.
///
/// On top of [`Float`] it requires a lossless decimal text form (`Display` /
/// `FromStr` round-trip), which the snapshot format relies on.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + FromStr + Sum + Send + Sync + 'static
{
    /// Maps 64 random bits onto `[0, 1)` using as many high bits as the
    /// mantissa holds, so the result can never round up to 1.
    fn from_unit_bits(bits: u64) -> Self;

    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 converts to every Scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("Scalar converts to f64")
    }
}

impl Scalar for f64 {
    #[inline]
    fn from_unit_bits(bits: u64) -> Self {
        (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

impl Scalar for f32 {
    #[inline]
    fn from_unit_bits(bits: u64) -> Self {
        (bits >> 40) as f32 * (1.0 / (1u32 << 24) as f32)
    }
}
