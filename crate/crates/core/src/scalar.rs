//! Scalar abstraction shared by every evaluator.
//!
//! Everything numeric in this crate is written against [`Real`], which is
//! implemented for `f32` and `f64`. The tolerances quoted in the docs and
//! tests refer to `f64`.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the integrals can be evaluated in.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Lossy conversion of a literal.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in target float")
    }

    /// Outward widening by `ulps` units of `|self|`'s magnitude, downward.
    #[inline]
    fn widen_down(self, ulps: u32) -> Self {
        self - ulp_slack(self, ulps)
    }

    /// Outward widening by `ulps` units of `|self|`'s magnitude, upward.
    #[inline]
    fn widen_up(self, ulps: u32) -> Self {
        self + ulp_slack(self, ulps)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `ulps * eps * |v|`, never less than the smallest normal number.
///
/// `eps * |v|` lies between one and two units in the last place of `v`, so
/// the slack is always at least `ulps` ulps.
#[inline]
pub fn ulp_slack<T: Real>(v: T, ulps: u32) -> T {
    let n = T::from_u32(ulps).unwrap();
    (n * T::epsilon() * v.abs()).max(n * T::min_positive_value())
}

/// True when `a` and `b` agree to within `ulps` ulps of the larger magnitude.
#[inline]
pub fn within_ulps<T: Real>(a: T, b: T, ulps: u32) -> bool {
    (a - b).abs() <= ulp_slack(a.abs().max(b.abs()), ulps)
}

/// Relative difference `|a - b| / |b|`, or the absolute difference when `b == 0`.
#[inline]
pub fn rel_diff<T: Real>(a: T, b: T) -> T {
    let d = (a - b).abs();
    if b == T::zero() {
        d
    } else {
        d / b.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widening_moves_outward_by_at_least_the_requested_ulps() {
        for &v in &[1.0f64, -3.5, 1e-300, 7.25e200] {
            let lo = v.widen_down(8);
            let hi = v.widen_up(8);
            assert!(lo < v && v < hi);
            let mut stepped = v;
            for _ in 0..8 {
                stepped = next_up(stepped);
            }
            assert!(hi >= stepped, "{v}: {hi} < {stepped}");
        }
        assert!(0.0f64.widen_down(8) < 0.0 && 0.0f64.widen_up(8) > 0.0);
    }

    fn next_up(v: f64) -> f64 {
        let bits = v.to_bits();
        if v >= 0.0 {
            f64::from_bits(bits + 1)
        } else {
            f64::from_bits(bits - 1)
        }
    }

    #[test]
    fn f32_is_supported() {
        let v = <f32 as Real>::lit(0.1);
        assert!((v - 0.1f32).abs() == 0.0);
        assert!(within_ulps(1.0f32, 1.0f32 + f32::EPSILON, 1));
    }
}
