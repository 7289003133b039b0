//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Binary floating point scalar: `f32` or `f64`.
///
/// All certificates are produced in `f64`; the evaluation code is written
/// against this trait so the same formulas can be exercised at lower
/// precision to see how much of each margin is rounding.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Lift an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Relative slack applied to every certified inequality `lhs <= rhs`.
pub const CERT_SLACK: f64 = 1e-9;

/// `lhs <= rhs` up to the certification slack, measured relative to the
/// larger of `|rhs|` and one.
#[inline]
pub fn certified_le<T: Real>(lhs: T, rhs: T) -> bool {
    let scale = rhs.abs().max(T::one());
    lhs <= rhs + T::lit(CERT_SLACK) * scale
}

/// `|approx - exact| <= radius` with the radius widened by the relative slack
/// and by a few ulps of the compared magnitude.
#[inline]
pub fn within_radius<T: Real>(approx: T, exact: T, radius: T) -> bool {
    let ulps = T::lit(64.0) * T::epsilon() * approx.abs().max(exact.abs()).max(T::one());
    (approx - exact).abs() <= radius * (T::one() + T::lit(CERT_SLACK)) + ulps
}

/// Round up at the given number of decimals, treating values within
/// `1e-9` (relative) of a grid point as lying on it.
pub fn round_up(x: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    let y = x * scale;
    let snapped = y.round();
    if (y - snapped).abs() <= CERT_SLACK * y.abs().max(1.0) {
        snapped / scale
    } else {
        y.ceil() / scale
    }
}

/// Round down at the given number of decimals, with the same snapping rule as
/// [`round_up`].
pub fn round_down(x: f64, decimals: i32) -> f64 {
    -round_up(-x, decimals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_outward() {
        assert_eq!(round_up(0.193135, 3), 0.194);
        assert_eq!(round_up(0.4615, 3), 0.462);
        assert_eq!(round_down(1.9195, 3), 1.919);
        assert_eq!(round_down(1.4584975, 3), 1.458);
        // values already on the grid stay put
        assert_eq!(round_up(2.381 - 1.919, 3), 0.462);
        assert_eq!(round_up(-0.25, 3), -0.25);
    }

    #[test]
    fn slack_comparisons() {
        assert!(certified_le(1.0 + 1e-12, 1.0));
        assert!(!certified_le(1.0 + 1e-6, 1.0));
        assert!(within_radius(1.0, 1.0 + 1e-3, 1e-3));
        assert!(!within_radius(1.0, 1.0 + 2e-3, 1e-3));
    }
}
