use crate::error::{Error, Result};
use crate::reference::carlson::{rc_unchecked, rf_unchecked, rg};
use crate::scalar::Real;

/// Gauss's arithmetic-geometric mean of `u, v > 0`.
pub fn agm<T: Real>(u: T, v: T) -> Result<T> {
    if !(u.is_finite() && v.is_finite()) || u <= T::zero() || v <= T::zero() {
        return Err(Error::domain("agm", "arguments must be positive and finite"));
    }
    let (mut a, mut g) = (u, v);
    // quadratic convergence; the cap only guards against a 2-cycle in the last bit
    for _ in 0..64 {
        if (a - g).abs() <= T::epsilon() * a {
            break;
        }
        let next = (a + g) / T::lit(2.0);
        g = (a * g).sqrt();
        a = next;
    }
    Ok((a + g) / T::lit(2.0))
}

/// Complete integral of the first kind, `K(k) = R_F(0, 1 - k^2, 1)`, for `0 <= k < 1`.
pub fn legendre_k<T: Real>(k: T) -> Result<T> {
    if !k.is_finite() || k < T::zero() || k >= T::one() {
        return Err(Error::domain("legendre_k", "k must lie in [0, 1)"));
    }
    let kp2 = (T::one() - k) * (T::one() + k);
    Ok(rf_unchecked(T::zero(), kp2, T::one()))
}

/// Complete integral of the second kind, `E(k) = 2 R_G(0, 1 - k^2, 1)`, for `0 <= k <= 1`.
pub fn legendre_e<T: Real>(k: T) -> Result<T> {
    if !k.is_finite() || k < T::zero() || k > T::one() {
        return Err(Error::domain("legendre_e", "k must lie in [0, 1]"));
    }
    let kp2 = (T::one() - k) * (T::one() + k);
    Ok(T::lit(2.0) * rg(T::zero(), kp2, T::one())?)
}

/// `K` in terms of the complementary modulus, `R_F(0, k'^2, 1)`, for `0 < k' <= 1`.
///
/// Accurate for small `k'`, where forming `k` first would round `1 - k^2`.
pub fn legendre_k_prime<T: Real>(kprime: T) -> Result<T> {
    if !kprime.is_finite() || kprime <= T::zero() || kprime > T::one() {
        return Err(Error::domain("legendre_k_prime", "k' must lie in (0, 1]"));
    }
    Ok(rf_unchecked(T::zero(), kprime * kprime, T::one()))
}

/// `E` in terms of the complementary modulus, `2 R_G(0, k'^2, 1)`, for `0 <= k' <= 1`.
pub fn legendre_e_prime<T: Real>(kprime: T) -> Result<T> {
    if !kprime.is_finite() || kprime < T::zero() || kprime > T::one() {
        return Err(Error::domain("legendre_e_prime", "k' must lie in [0, 1]"));
    }
    Ok(T::lit(2.0) * rg(T::zero(), kprime * kprime, T::one())?)
}

/// `int_0^inf [(t + x)(t + y)]^(-1/2) (t + z)^(-1) dt`
/// `= 2 R_C((sqrt(xy) + z)^2, (sqrt x + sqrt y)^2 z)`.
pub fn r_minus1<T: Real>(x: T, y: T, z: T) -> Result<T> {
    for v in [x, y, z] {
        if !v.is_finite() || v <= T::zero() {
            return Err(Error::domain("r_minus1", "arguments must be positive and finite"));
        }
    }
    let g = x.sqrt() * y.sqrt();
    let s = x.sqrt() + y.sqrt();
    Ok(T::lit(2.0) * rc_unchecked((g + z) * (g + z), s * s * z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{rd, rf};
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    #[test]
    fn agm_values() {
        assert_eq!(agm(1.0, 1.0).unwrap(), 1.0);
        let (u, v) = (1.0, 7.0);
        let once = agm((u + v) / 2.0, f64::sqrt(u * v)).unwrap();
        assert!((agm(u, v).unwrap() - once).abs() <= 4.0 * f64::EPSILON * once);
        let k = FRAC_PI_2 / agm(1.0, SQRT_2).unwrap();
        let f = rf(0.0, 1.0, 2.0).unwrap();
        assert!((k - f).abs() <= 1e-14 * f);
        assert!(agm(0.0, 1.0).is_err());
    }

    #[test]
    fn legendre_values() {
        assert!((legendre_k(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!((legendre_e(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(legendre_e(1.0).unwrap(), 1.0);
        assert!(legendre_k(1.0).is_err());
        assert!(legendre_e(1.5).is_err());
        let k = 0.8f64;
        let lhs = legendre_k(k).unwrap() - legendre_e(k).unwrap();
        let rhs = k * k / 3.0 * rd(0.0, 1.0 - k * k, 1.0).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn complementary_forms_agree() {
        let kp = 0.6f64;
        let k = 0.8f64;
        assert!((legendre_k_prime(kp).unwrap() - legendre_k(k).unwrap()).abs() < 1e-15);
        assert!((legendre_e_prime(kp).unwrap() - legendre_e(k).unwrap()).abs() < 1e-15);
        assert_eq!(legendre_e_prime(0.0f64).unwrap(), 1.0);
        assert!((legendre_k_prime(1.0f64).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn r_minus1_equal_arguments() {
        assert!((r_minus1(1.0f64, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        for &x in &[1e-3f64, 0.3, 5.0, 1e3] {
            let v = r_minus1(x, x, x).unwrap();
            assert!((v * x - 1.0).abs() < 4.0 * f64::EPSILON);
        }
        assert!(r_minus1(0.0, 1.0, 1.0).is_err());
    }
}
