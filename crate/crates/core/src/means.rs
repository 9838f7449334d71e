//! Symmetric means of the integral arguments.

use crate::scalar::Real;

/// Means of two or three nonnegative variables.
///
/// For two variables the second Maclaurin mean is `g` itself, so `b` and
/// `lambda` are both set to `sqrt(xy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanStats<T> {
    /// Arithmetic mean.
    pub a: T,
    /// Geometric mean.
    pub g: T,
    /// Harmonic mean.
    pub h: T,
    /// Second Maclaurin mean, `sqrt(e2 / n_pairs)`.
    pub b: T,
    /// `sqrt(xy) + sqrt(xz) + sqrt(yz)`.
    pub lambda: T,
    /// `(z + 2p) / 3`, present only when built with [`MeanStats::with_p`].
    pub d: Option<T>,
}

impl<T: Real> MeanStats<T> {
    pub fn of2(x: T, y: T) -> Self {
        let a = (x + y) / T::lit(2.0);
        let g = x.sqrt() * y.sqrt();
        let h = if x == T::zero() || y == T::zero() {
            T::zero()
        } else {
            T::lit(2.0) * x * y / (x + y)
        };
        Self { a, g, h, b: g, lambda: g, d: None }
    }

    pub fn of3(x: T, y: T, z: T) -> Self {
        let three = T::lit(3.0);
        let a = (x + y + z) / three;
        let g = (x * y * z).cbrt();
        let e2 = x * y + x * z + y * z;
        let h = if x == T::zero() || y == T::zero() || z == T::zero() {
            T::zero()
        } else {
            three * x * y * z / e2
        };
        let b = (e2 / three).sqrt();
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        Self { a, g, h, b, lambda, d: None }
    }

    /// Attaches `d = (z + 2p) / 3`.
    pub fn with_p(mut self, z: T, p: T) -> Self {
        self.d = Some((z + T::lit(2.0) * p) / T::lit(3.0));
        self
    }

    /// `h <= g <= b <= a` within `ulps` ulps.
    pub fn chain_holds(&self, ulps: u32) -> bool {
        let le = |u: T, v: T| u <= v + crate::scalar::ulp_slack(v, ulps);
        le(self.h, self.g) && le(self.g, self.b) && le(self.b, self.a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_variables_collapse() {
        let m = MeanStats::of3(2.0f64, 2.0, 2.0);
        assert!((m.a - 2.0).abs() < 1e-15 && (m.g - 2.0).abs() < 1e-15);
        assert!((m.h - 2.0).abs() < 1e-15 && (m.b - 2.0).abs() < 1e-15);
        assert!((m.lambda - 6.0).abs() < 1e-14);
        let m = MeanStats::of2(3.0f64, 3.0);
        assert_eq!((m.a, m.h), (3.0, 3.0));
    }

    #[test]
    fn maclaurin_chain_on_skewed_triple() {
        let m = MeanStats::of3(1e-3f64, 2.0, 50.0).with_p(50.0, 1.0);
        assert!(m.chain_holds(0));
        assert!(m.h < m.g && m.g < m.b && m.b < m.a);
        assert_eq!(m.d, Some(52.0 / 3.0));
    }
}
