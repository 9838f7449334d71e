//! J1 to J6.

use super::{model_closed, model_open, Built, CaseId, Link};
use crate::error::{Error, Result};
use crate::reference::{agm, rc, rd, rf, rj};
use crate::scalar::Real;

pub(super) fn build<T: Real>(case: CaseId, args: &[T]) -> Result<Built<T>> {
    let (x, y, z, p) = (args[0], args[1], args[2], args[3]);
    use CaseId::*;
    match case {
        J1a => j1a(x, y, z, p),
        J1b => j1b(x, y, z, p),
        J2a | J2b => j2(case, x, y, z, p),
        J3 => j3(x, y, z, p),
        J4a | J4b | J4c => j4(case, x, y, z, p),
        J5 => j5(x, y, z, p),
        J6a => j6a(x, y, z, p),
        J6complete => j6_complete(x, y, z, p),
        _ => unreachable!("{case} is not an R_J case"),
    }
}

fn max3<T: Real>(x: T, y: T, z: T) -> T {
    x.max(y).max(z)
}

fn j1a<T: Real>(x: T, y: T, z: T, p: T) -> Result<Built<T>> {
    let a = (x + y + z) / T::lit(3.0);
    let b = T::lit(0.75).sqrt() * (x * y + x * z + y * z).sqrt();
    if !(a < p && b < p) {
        return Err(Error::regime(CaseId::J1a, "a < p and b < p"));
    }
    let k = T::lit(1.5) * T::PI() / (p * p.sqrt());
    let base = T::lit(3.0) / p * rf(x, y, z)? - k;
    let (sb, sa) = ((b / p).sqrt(), (a / p).sqrt());
    let lo = sb / (T::one() + sb);
    let hi = T::lit(1.5) * sa / (T::one() + sa);
    Ok(Built::new(model_open(base, k, Link::Linear, lo, hi), max3(x, y, z) / p))
}

fn j1b<T: Real>(x: T, y: T, z: T, p: T) -> Result<Built<T>> {
    let a = (x + y) / T::lit(2.0);
    let g = x.sqrt() * y.sqrt();
    if !(z == T::zero() && a < p) {
        return Err(Error::regime(CaseId::J1b, "z = 0 and a < p"));
    }
    let complete = T::FRAC_PI_2() / agm(x.sqrt(), y.sqrt())?;
    let scale = T::lit(3.0) / p * (complete - T::FRAC_PI_2() / p.sqrt());
    // equalities iff x = y, where the bracket collapses
    let model = if x == y {
        model_closed(T::zero(), scale, Link::Pole(p), a, a)
    } else {
        model_open(T::zero(), scale, Link::Pole(p), g.min(a), a)
    };
    Ok(Built::new(model, x.max(y) / p))
}

fn j2<T: Real>(case: CaseId, x: T, y: T, z: T, p: T) -> Result<Built<T>> {
    let three = T::lit(3.0);
    let zero = T::zero();
    let h = if x > zero && y > zero && z > zero {
        three / (x.recip() + y.recip() + z.recip())
    } else {
        zero
    };
    if !(p < h) {
        return Err(Error::regime(case, "p < h"));
    }
    let g = (x * y * z).cbrt().max(h);
    let root = x.sqrt() * y.sqrt() * z.sqrt();
    let c = three / (T::lit(2.0) * root);
    let lgp = (g / p).ln();
    let ratio = p / x.min(y).min(z);
    let model = if case == CaseId::J2a {
        let lo = -(g / h).ln();
        let hi = three * p / (T::lit(2.0) * (g - p)) * lgp;
        model_open(c * ((T::lit(4.0) * g / p).ln() - T::lit(2.0)), c, Link::Linear, lo, hi)
    } else {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        // ln(4xyz / (p lam^2)) term by term to stay in range
        let log_term = T::lit(4.0).ln() + x.ln() + y.ln() + z.ln() - p.ln() - T::lit(2.0) * lam.ln();
        let base = c * log_term + T::lit(2.0) * rj(x + lam, y + lam, z + lam, lam)?;
        let scale = three * p / (T::lit(4.0) * root);
        let lo = T::lit(2.0) / (g - p) * lgp;
        let hi = three / (h - p) * (h / p).ln();
        model_open(base, scale, Link::Linear, lo, hi)
    };
    Ok(Built::new(model, ratio))
}

fn j3<T: Real>(x: T, y: T, z: T, p: T) -> Result<Built<T>> {
    let two = T::lit(2.0);
    let a = (x + y) / two;
    let g = x.sqrt() * y.sqrt();
    if !(z > T::zero() && a < p && g < p) {
        return Err(Error::regime(CaseId::J3, "z > 0, a < p and g < p"));
    }
    let c = T::lit(3.0) / (two * z.sqrt() * p);
    let base = c * ((T::lit(8.0) * z / (a + g)).ln() - two * rc(T::one(), p / z)?);
    let scale = c * (two * p / (a + g)).ln() / p;
    let lo = g / (T::one() - g / p);
    let hi = a / (T::one() - a / p) * (T::one() + p / (two * z));
    Ok(Built::new(model_open(base, scale, Link::Linear, lo, hi), x.max(y) / z.min(p)))
}

fn j4<T: Real>(case: CaseId, x: T, y: T, z: T, p: T) -> Result<Built<T>> {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let a = (x + y) / two;
    let g = x.sqrt() * y.sqrt();
    let ratio = z.max(p) / x.min(y);
    if case == CaseId::J4b {
        if !(z == T::zero() && p < g) {
            return Err(Error::regime(case, "z = 0 and p < g"));
        }
    } else if !(z < g && p < g) {
        return Err(Error::regime(case, "z < g and p < g"));
    }
    let hi_theta = if x == y { T::one() } else { (a / g).max(T::one()) };
    let closed = |base, scale| {
        if x == y {
            model_closed(base, scale, Link::Linear, T::one(), T::one())
        } else {
            // 1 <= theta <= a/g, attained only at x = y
            model_open(base, scale, Link::Linear, T::one(), hi_theta)
        }
    };
    let model = match case {
        CaseId::J4a => {
            let rzp = rc(z, p)?;
            let base = three / g * rzp;
            let scale = -three / (g - p) * (rc(z, g)? - p / g * rzp);
            closed(base, scale)
        }
        CaseId::J4b => {
            let base = three * T::PI() / (two * x.sqrt() * y.sqrt() * p.sqrt());
            let scale = -base * p.sqrt() / (g.sqrt() + p.sqrt());
            closed(base, scale)
        }
        _ => {
            let b = (three * p * (p + two * z)).sqrt() / two;
            let d = (z + two * p) / three;
            let base = three / g * rc(z, p)? - (rd(T::zero(), x, y)? + rd(T::zero(), y, x)?);
            let scale = three * T::PI() / (two * x * y);
            let lo = b.sqrt() / (T::one() + (b / g).sqrt());
            let hi = three * a / (two * g) * d.sqrt() / (T::one() + (d / g).sqrt());
            model_open(base, scale, Link::Linear, lo, hi)
        }
    };
    Ok(Built::new(model, ratio))
}

fn j5<T: Real>(x: T, y: T, z: T, p: T) -> Result<Built<T>> {
    let a = (y + z) / T::lit(2.0);
    let g = y.sqrt() * z.sqrt();
    if !(y > T::zero() && z > T::zero() && x < a) {
        return Err(Error::regime(CaseId::J5, "y, z > 0 and x < a"));
    }
    let k = T::lit(3.0) * x.sqrt() / (g * p);
    let base = rj(T::zero(), y, z, p)? - k;
    let scale = k * T::PI() / T::lit(4.0) * (x / g).sqrt();
    let lo = (g / a).sqrt() / (T::one() + (x / a).sqrt());
    let hi = a / g + g / p;
    Ok(Built::new(model_open(base, scale, Link::Linear, lo, hi), x / y.min(z).min(p)))
}

fn j6a<T: Real>(x: T, y: T, z: T, p: T) -> Result<Built<T>> {
    let two = T::lit(2.0);
    let a = (y + z) / two;
    let g = y.sqrt() * z.sqrt();
    if !(a < two * x && g < x) {
        return Err(Error::regime(CaseId::J6a, "a < 2x and g < x"));
    }
    let r = rc((g + p) * (g + p), two * (a + g) * p)?;
    let sx = x.sqrt();
    let base = T::lit(3.0) / sx * r;
    let scale = -T::lit(3.0) / (T::lit(4.0) * sx);
    let lo = (two * x / (a + g)).ln() / (x - g) - two * p / x * r;
    let hi = (T::lit(8.0) * x / (a + g)).ln() / (x - a / two);
    Ok(Built::new(model_open(base, scale, Link::Linear, lo, hi), max3(y, z, p) / x))
}

fn j6_complete<T: Real>(x: T, y: T, z: T, p: T) -> Result<Built<T>> {
    let four = T::lit(4.0);
    if !(y == T::zero() && z < four * x) {
        return Err(Error::regime(CaseId::J6complete, "y = 0 and z < 4x"));
    }
    let rpz = rc(p, z)?;
    let base = T::lit(3.0) / (x.sqrt() * p.sqrt()) * rpz;
    let scale = -T::lit(3.0) / (four * x * x.sqrt());
    let lo = (four * x / z).ln() - T::lit(2.0) * p.sqrt() * rpz;
    let hi = (T::lit(16.0) * x / z).ln() / (T::one() - z / (four * x));
    Ok(Built::new(model_open(base, scale, Link::Linear, lo, hi), z.max(p) / x))
}
