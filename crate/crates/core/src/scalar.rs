use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive};

/// Real scalar the library computes with: `f32` or `f64`.
pub trait Scalar: Float + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static {
    /// Converts an `f64` literal; every literal used by the library is representable.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Relative tolerance used when deciding that two costs are tied.
    fn tie_tolerance() -> Self;
}

impl Scalar for f32 {
    fn tie_tolerance() -> Self {
        1e-6
    }
}

impl Scalar for f64 {
    fn tie_tolerance() -> Self {
        1e-12
    }
}

/// `a` and `b` are equal up to the scalar's tie tolerance, relative to the larger magnitude.
pub fn approx_tied<T: Scalar>(a: T, b: T) -> bool {
    let scale = a.abs().max(b.abs()).max(T::one());
    (a - b).abs() <= T::tie_tolerance() * scale
}
