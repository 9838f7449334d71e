use crate::error::{Error, Result};
use crate::reference::args::{sort3, Sym3Args};
use crate::scalar::Real;

/// Below this relative separation `|x - y| / x` the closed forms of `R_C`
/// are replaced by their power series.
const RC_SERIES_THRESHOLD: f64 = 1e-6;

/// `R_C(x, y)` for `x >= 0`, `y > 0`.
pub fn rc<T: Real>(x: T, y: T) -> Result<T> {
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::domain("rc", "arguments must be finite"));
    }
    if x < T::zero() {
        return Err(Error::domain("rc", "x must be nonnegative"));
    }
    if y <= T::zero() {
        return Err(Error::domain("rc", "y must be positive (use rc_pv for y < 0)"));
    }
    Ok(rc_unchecked(x, y))
}

pub(crate) fn rc_unchecked<T: Real>(x: T, y: T) -> T {
    if x == y {
        return y.sqrt().recip();
    }
    if x == T::zero() {
        return T::FRAC_PI_2() / y.sqrt();
    }
    let s = (x - y) / x;
    if s.abs() < T::lit(RC_SERIES_THRESHOLD) {
        // atanh(sqrt(s)) / sqrt(s) = sum s^k / (2k + 1)
        let series = T::one()
            + s * (T::one() / T::lit(3.0)
                + s * (T::one() / T::lit(5.0) + s * (T::one() / T::lit(7.0))));
        return series / x.sqrt();
    }
    if x < y {
        // (y - x)^(-1/2) arccos(sqrt(x / y))
        let d = (y - x).sqrt();
        d.atan2(x.sqrt()) / d
    } else {
        // (x - y)^(-1/2) ln((sqrt(x) + sqrt(x - y)) / sqrt(y)), argument of ln written as 1 + u
        let d = (x - y).sqrt();
        let (sx, sy) = (x.sqrt(), y.sqrt());
        let u = ((x - y) / (sx + sy) + d) / sy;
        u.ln_1p() / d
    }
}

fn tolerance_q<T: Real>(scale: f64, spread: T) -> T {
    // Q = (scale * r)^(-1/6) * spread with r the unit roundoff
    (T::lit(scale) * T::epsilon()).powf(T::lit(-1.0 / 6.0)) * spread
}

/// `R_F(x, y, z)`; at most one argument may be zero.
pub fn rf<T: Real>(x: T, y: T, z: T) -> Result<T> {
    Sym3Args::check("rf", x, y, z)?;
    let [a, b, c] = sort3(x, y, z);
    Ok(rf_unchecked(a, b, c))
}

/// Duplication for `R_F`; arguments already validated.
pub(crate) fn rf_unchecked<T: Real>(x0: T, y0: T, z0: T) -> T {
    let quarter = T::lit(0.25);
    let a0 = (x0 + y0 + z0) / T::lit(3.0);
    let q = tolerance_q(3.0, (a0 - x0).abs().max((a0 - y0).abs()).max((a0 - z0).abs()));
    let (mut x, mut y, mut z, mut a) = (x0, y0, z0, a0);
    let mut fac = T::one();
    while fac * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        x = (x + lam) * quarter;
        y = (y + lam) * quarter;
        z = (z + lam) * quarter;
        a = (a + lam) * quarter;
        fac = fac * quarter;
    }
    let xd = (a0 - x0) * fac / a;
    let yd = (a0 - y0) * fac / a;
    let zd = -(xd + yd);
    let e2 = xd * yd - zd * zd;
    let e3 = xd * yd * zd;
    let poly = T::one() - e2 / T::lit(10.0) + e3 / T::lit(14.0) + e2 * e2 / T::lit(24.0)
        - T::lit(3.0) * e2 * e3 / T::lit(44.0);
    poly / a.sqrt()
}

fn series_rd_rj<T: Real>(e2: T, e3: T, e4: T, e5: T) -> T {
    T::one() - T::lit(3.0) * e2 / T::lit(14.0) + e3 / T::lit(6.0)
        + T::lit(9.0) * e2 * e2 / T::lit(88.0)
        - T::lit(3.0) * e4 / T::lit(22.0)
        - T::lit(9.0) * e2 * e3 / T::lit(52.0)
        + T::lit(3.0) * e5 / T::lit(26.0)
}

/// `R_D(x, y, z)`; `z > 0` and `x`, `y` not both zero. Symmetric in `x`, `y`.
pub fn rd<T: Real>(x: T, y: T, z: T) -> Result<T> {
    Sym3Args::check("rd", x, y, z)?;
    if z <= T::zero() {
        return Err(Error::domain("rd", "z must be positive"));
    }
    let (a, b) = if y < x { (y, x) } else { (x, y) };
    Ok(rd_unchecked(a, b, z))
}

pub(crate) fn rd_unchecked<T: Real>(x0: T, y0: T, z0: T) -> T {
    let quarter = T::lit(0.25);
    let a0 = (x0 + y0 + T::lit(3.0) * z0) / T::lit(5.0);
    let q = tolerance_q(0.25, (a0 - x0).abs().max((a0 - y0).abs()).max((a0 - z0).abs()));
    let (mut x, mut y, mut z, mut a) = (x0, y0, z0, a0);
    let mut fac = T::one();
    let mut sum = T::zero();
    while fac * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        sum = sum + fac / (sz * (z + lam));
        x = (x + lam) * quarter;
        y = (y + lam) * quarter;
        z = (z + lam) * quarter;
        a = (a + lam) * quarter;
        fac = fac * quarter;
    }
    let xd = (a0 - x0) * fac / a;
    let yd = (a0 - y0) * fac / a;
    let zd = -(xd + yd) / T::lit(3.0);
    let xy = xd * yd;
    let z2 = zd * zd;
    let e2 = xy - T::lit(6.0) * z2;
    let e3 = (T::lit(3.0) * xy - T::lit(8.0) * z2) * zd;
    let e4 = T::lit(3.0) * (xy - z2) * z2;
    let e5 = xy * z2 * zd;
    fac * series_rd_rj(e2, e3, e4, e5) / (a * a.sqrt()) + T::lit(3.0) * sum
}

/// `R_J(x, y, z, p)` for `p > 0`; symmetric in `x`, `y`, `z`.
///
/// When `p` equals one of the other arguments this is exactly `rd` with that
/// argument in the last slot.
pub fn rj<T: Real>(x: T, y: T, z: T, p: T) -> Result<T> {
    Sym3Args::check("rj", x, y, z)?;
    if !p.is_finite() || p <= T::zero() {
        return Err(Error::domain("rj", "p must be positive (use rj_pv for p < 0)"));
    }
    let [a, b, c] = sort3(x, y, z);
    Ok(rj_sorted(a, b, c, p))
}

fn rj_sorted<T: Real>(a: T, b: T, c: T, p: T) -> T {
    if p == c {
        rd_unchecked(a, b, c)
    } else if p == b {
        rd_unchecked(a, c, b)
    } else if p == a {
        rd_unchecked(b, c, a)
    } else {
        rj_unchecked(a, b, c, p)
    }
}

pub(crate) fn rj_unchecked<T: Real>(x0: T, y0: T, z0: T, p0: T) -> T {
    let quarter = T::lit(0.25);
    let a0 = (x0 + y0 + z0 + T::lit(2.0) * p0) / T::lit(5.0);
    let spread = (a0 - x0)
        .abs()
        .max((a0 - y0).abs())
        .max((a0 - z0).abs())
        .max((a0 - p0).abs());
    let q = tolerance_q(0.25, spread);
    let (mut x, mut y, mut z, mut p, mut a) = (x0, y0, z0, p0, a0);
    let mut fac = T::one();
    let mut sum = T::zero();
    while fac * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        // both rc arguments are sums of positive terms, so nothing cancels when p is small
        let al = p * (sx + sy + sz) + sx * sy * sz;
        let be = p * (p + lam) * (p + lam);
        sum = sum + fac * rc_unchecked(al * al, be);
        x = (x + lam) * quarter;
        y = (y + lam) * quarter;
        z = (z + lam) * quarter;
        p = (p + lam) * quarter;
        a = (a + lam) * quarter;
        fac = fac * quarter;
    }
    let xd = (a0 - x0) * fac / a;
    let yd = (a0 - y0) * fac / a;
    let zd = (a0 - z0) * fac / a;
    let pd = -(xd + yd + zd) / T::lit(2.0);
    let xyz = xd * yd * zd;
    let p2 = pd * pd;
    let e2 = xd * yd + xd * zd + yd * zd - T::lit(3.0) * p2;
    let e3 = xyz + T::lit(2.0) * e2 * pd + T::lit(4.0) * p2 * pd;
    let e4 = (T::lit(2.0) * xyz + e2 * pd + T::lit(3.0) * p2 * pd) * pd;
    let e5 = xyz * p2;
    fac * series_rd_rj(e2, e3, e4, e5) / (a * a.sqrt()) + T::lit(3.0) * sum
}

/// `R_G(x, y, z)`, assembled as
/// `2 R_G = z R_F - (z - x)(z - y) R_D / 3 + sqrt(x y / z)` with the middle
/// argument in the `z` slot, where all three terms are non-negative. `rg(0, 0, z) = sqrt(z) / 2` is accepted.
pub fn rg<T: Real>(x: T, y: T, z: T) -> Result<T> {
    let [a, b, c] = sort3(x, y, z);
    if a == T::zero() && b == T::zero() && c.is_finite() && c > T::zero() {
        return Ok(c.sqrt() / T::lit(2.0));
    }
    Sym3Args::check("rg", x, y, z)?;
    Ok(rg_sorted(a, c, b))
}

fn rg_sorted<T: Real>(x: T, y: T, z: T) -> T {
    let f = rf_unchecked(x, y, z);
    let d = rd_unchecked(x, y, z);
    let tail = x.sqrt() * y.sqrt() / z.sqrt();
    (z * f - (z - x) * (z - y) * d / T::lit(3.0) + tail) / T::lit(2.0)
}
