use crate::error::{Error, Result};
use crate::reference::args::sort3;
use crate::reference::carlson::{rc_unchecked, rf_unchecked, rj};
use crate::scalar::Real;

/// Cauchy principal value `R_C(x, -y_abs)`.
pub fn rc_pv<T: Real>(x: T, y_abs: T) -> Result<T> {
    if !(x.is_finite() && y_abs.is_finite()) || x < T::zero() {
        return Err(Error::domain("rc_pv", "x must be finite and nonnegative"));
    }
    if y_abs <= T::zero() {
        return Err(Error::domain("rc_pv", "y_abs must be positive"));
    }
    let s = x + y_abs;
    Ok((x / s).sqrt() * rc_unchecked(s, y_abs))
}

/// Cauchy principal value of `R_J(x, y, z, p)` for `p < 0`.
///
/// The middle argument goes in the `y` slot so that `q >= y > 0`.
pub fn rj_pv<T: Real>(x: T, y: T, z: T, p: T) -> Result<T> {
    for v in [x, y, z] {
        if !v.is_finite() || v <= T::zero() {
            return Err(Error::domain("rj_pv", "x, y, z must be positive and finite"));
        }
    }
    if !p.is_finite() || p >= T::zero() {
        return Err(Error::domain("rj_pv", "p must be negative"));
    }
    let [x, y, z] = sort3(x, y, z);
    let pa = -p;
    let yp = y + pa;
    let qmy = (z - y) * (y - x) / yp;
    let q = y + qmy;
    let pq = pa * q;
    let xz = x * z;
    let mut rhs = T::lit(3.0) * ((x * y * z) / (xz + pq)).sqrt() * rc_unchecked(xz + pq, pq)
        - T::lit(3.0) * rf_unchecked(x, y, z);
    if qmy != T::zero() {
        rhs = rhs + qmy * rj(x, y, z, q)?;
    }
    Ok(rhs / yp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rc_pv_values() {
        assert_eq!(rc_pv(0.0, 1.0).unwrap(), 0.0);
        let v = rc_pv(1.0, 1.0).unwrap();
        let expect = f64::sqrt(0.5) * (1.0 + 2f64.sqrt()).ln();
        assert!((v - expect).abs() < 1e-15);
        assert!((v - 0.6232252).abs() < 1e-7);
        assert!(rc_pv(1.0, 0.0).is_err());
    }

    #[test]
    fn rj_pv_equal_arguments() {
        let v = rj_pv(1.0, 1.0, 1.0, -0.5).unwrap();
        let expect = (-3.0 + 3.0 * f64::sqrt(1.0 / 1.5) * rc_unchecked(1.5, 0.5)) / 1.5;
        assert!((v - expect).abs() <= 4.0 * f64::EPSILON * expect.abs());
        assert!((v + 0.128).abs() < 1e-3);
    }

    #[test]
    fn rj_pv_is_symmetric_and_checks_domain() {
        let a = rj_pv(1.0, 2.0, 4.0, -1.0).unwrap();
        assert_eq!(a, rj_pv(4.0, 1.0, 2.0, -1.0).unwrap());
        assert!(rj_pv(0.0, 2.0, 4.0, -1.0).is_err());
        assert!(rj_pv(1.0, 2.0, 4.0, 1.0).is_err());
    }
}
