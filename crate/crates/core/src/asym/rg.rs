//! G1, G2 and the Legendre `E` case.

use super::{model_open, Built, CaseId, Link};
use crate::error::{Error, Result};
use crate::reference::{rd, rg, REFERENCE_REL_ERR};
use crate::scalar::Real;

pub(super) fn build<T: Real>(case: CaseId, args: &[T]) -> Result<Built<T>> {
    use CaseId::*;
    match case {
        G1a => g1a(args[0], args[1], args[2]),
        G1b => g1b(args[0], args[1], args[2]),
        G1c => g1c(args[0]),
        G2 => g2(args[0], args[1], args[2]),
        _ => unreachable!("{case} is not an R_G case"),
    }
}

fn g1a<T: Real>(x: T, y: T, z: T) -> Result<Built<T>> {
    let two = T::lit(2.0);
    let a = (x + y) / two;
    let g = x.sqrt() * y.sqrt();
    if !(a < z) {
        return Err(Error::regime(CaseId::G1a, "a < z"));
    }
    let l = (two * z / (a + g)).ln();
    let lo = (a + g) / two * l + two * g - T::lit(4.0) * a / T::lit(3.0);
    let hi = (T::lit(3.0) * a - g) * l + two * g - a / T::lit(3.0);
    let sz = z.sqrt();
    let model = model_open(sz / two, T::one() / (T::lit(4.0) * sz), Link::Linear, lo, hi);
    let mut b = Built::new(model, x.max(y) / z);
    if !(T::lit(5.0) * a < z) {
        // upper endpoint of the bracket is only established for 5a < z
        b.regime.upper_valid = false;
        let v = rg(x, y, z)?;
        b.hi_override = Some(v + v.abs() * T::lit(REFERENCE_REL_ERR));
    }
    Ok(b)
}

fn g1b<T: Real>(x: T, y: T, z: T) -> Result<Built<T>> {
    if !(x == T::zero() && y < z) {
        return Err(Error::regime(CaseId::G1b, "x = 0 and y < z"));
    }
    let sz = z.sqrt();
    let l16 = (T::lit(16.0) * z / y).ln();
    let base = sz / T::lit(2.0) + y / (T::lit(8.0) * sz) * (l16 - T::one());
    let scale = y * y / (T::lit(16.0) * z * sz);
    let lo = T::lit(0.75) * (z / y).ln();
    let hi = (l16 - T::lit(13.0) / T::lit(6.0)) / (T::one() - y / z);
    Ok(Built::new(model_open(base, scale, Link::Linear, lo, hi), y / z))
}

fn g1c<T: Real>(kp: T) -> Result<Built<T>> {
    let kp2 = kp * kp;
    let k = ((T::one() - kp) * (T::one() + kp)).sqrt();
    let l4 = (T::lit(4.0) / kp).ln();
    let base = T::one() + kp2 / T::lit(2.0) * (l4 - T::lit(0.5));
    let scale = kp2 * kp2 / T::lit(2.0);
    let lo = T::lit(0.375) * (T::one() / kp).ln();
    let hi = (l4 - T::lit(13.0) / T::lit(12.0)) / (k * (T::one() + k));
    Ok(Built::new(model_open(base, scale, Link::Linear, lo, hi), kp2))
}

fn g2<T: Real>(x: T, y: T, z: T) -> Result<Built<T>> {
    let a = (x + y) / T::lit(2.0);
    let g = x.sqrt() * y.sqrt();
    let pi = T::PI();
    let quarter_pi = pi / T::lit(4.0);
    if !(z < g && z < quarter_pi * quarter_pi * a) {
        return Err(Error::regime(CaseId::G2, "z < g and 1 - (4/pi) sqrt(z/a) > 0"));
    }
    // R_G(x, y, 0) = xy [R_D(0, x, y) + R_D(0, y, x)] / 6
    let complete = x * y * (rd(T::zero(), x, y)? + rd(T::zero(), y, x)?) / T::lit(6.0);
    let lo = (T::one() - (z / a).sqrt() / quarter_pi) / a.sqrt();
    let hi = (T::lit(2.0) / (a * g + g * g)).powf(T::lit(0.25));
    let model = model_open(complete, pi * z / T::lit(8.0), Link::Linear, lo, hi);
    Ok(Built::new(model, z / x.min(y)))
}
