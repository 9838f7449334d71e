//! D1 to D4.

use super::{model_open, Built, CaseId, Link};
use crate::error::{Error, Result};
use crate::reference::rd;
use crate::scalar::Real;

pub(super) fn build<T: Real>(case: CaseId, args: &[T]) -> Result<Built<T>> {
    let (x, y, z) = (args[0], args[1], args[2]);
    use CaseId::*;
    match case {
        D1 => d1(x, y, z),
        D2a | D2b | D2c => d2(case, x, y, z),
        D3 => d3(x, y, z),
        D4 => d4(x, y, z),
        _ => unreachable!("{case} is not an R_D case"),
    }
}

fn d1<T: Real>(x: T, y: T, z: T) -> Result<Built<T>> {
    let two = T::lit(2.0);
    let a = (x + y) / two;
    let g = x.sqrt() * y.sqrt();
    if !(g < z && a < z) {
        return Err(Error::regime(CaseId::D1, "g < z and a < z"));
    }
    let c = T::lit(3.0) / (two * z * z.sqrt());
    let l8 = (T::lit(8.0) * z / (a + g)).ln();
    let l2 = (two * z / (a + g)).ln();
    let lo = g / (T::one() - g / z);
    let hi = T::lit(3.0) * a / (two * (T::one() - a / z));
    let model = model_open(c * (l8 - two), c * l2 / z, Link::Linear, lo, hi);
    Ok(Built::new(model, x.max(y) / z))
}

fn d2<T: Real>(case: CaseId, x: T, y: T, z: T) -> Result<Built<T>> {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let pi = T::PI();
    let a = (x + y) / two;
    let g = x.sqrt() * y.sqrt();
    if !(z < g) {
        return Err(Error::regime(case, "z < g"));
    }
    let s = (z / g).sqrt();
    let c = three / (x.sqrt() * y.sqrt() * z.sqrt());
    let ratio = z / x.min(y);
    let model = match case {
        CaseId::D2a => {
            let lo = T::one() - T::lit(4.0) / pi * s;
            model_open(c, -c * pi / two * s, Link::Linear, lo, a / g)
        }
        CaseId::D2b => {
            let complete = rd(T::zero(), x, y)? + rd(T::zero(), y, x)?;
            let scale = three * pi * z.sqrt() / (two * g * g);
            let lo = T::one() / ((two / three).sqrt() + s);
            let hi = three * a / (two * g * (T::one() + s));
            model_open(c - complete, scale, Link::Linear, lo, hi)
        }
        _ => {
            let complete = rd(T::zero(), x, y)? + rd(T::zero(), y, x)?;
            let k = T::lit(6.0) * a * z.sqrt() / (g * g * g);
            let za = (z / a).sqrt();
            let lo = T::one() / (T::one() + za);
            let hi = (a / g).powf(T::lit(1.5)) * (three - g * g / (a * a));
            model_open(c - complete + k, -k * pi / T::lit(4.0) * za, Link::Linear, lo, hi)
        }
    };
    Ok(Built::new(model, ratio))
}

fn d3<T: Real>(x: T, y: T, z: T) -> Result<Built<T>> {
    let two = T::lit(2.0);
    let a = (y + z) / two;
    let g = y.sqrt() * z.sqrt();
    if !(g < x && a < two * x) {
        return Err(Error::regime(CaseId::D3, "g < x and a < 2x"));
    }
    let sx = x.sqrt();
    let base = T::lit(3.0) / (sx * (g + z));
    let scale = -T::lit(3.0) / (T::lit(4.0) * x * sx);
    let lo = (two * x / (a + g)).ln() / (T::one() - g / x) - two * z / (g + z);
    let hi = (T::lit(8.0) * x / (a + g)).ln() / (T::one() - a / (two * x));
    Ok(Built::new(model_open(base, scale, Link::Linear, lo, hi), y.max(z) / x))
}

fn d4<T: Real>(x: T, y: T, z: T) -> Result<Built<T>> {
    let two = T::lit(2.0);
    let a = (y + z) / two;
    let g = y.sqrt() * z.sqrt();
    if !(y > T::zero() && x < a) {
        return Err(Error::regime(CaseId::D4, "y > 0 and x < a"));
    }
    let k = T::lit(3.0) * x.sqrt() / (g * z);
    let xa = (x / a).sqrt();
    let base = rd(T::zero(), y, z)? - k;
    let scale = k * T::PI() / T::lit(4.0) * xa;
    let lo = T::one() / (T::one() + xa);
    let hi = (a / g).powf(T::lit(1.5)) * (T::one() + y / a);
    Ok(Built::new(model_open(base, scale, Link::Linear, lo, hi), x / y.min(z)))
}
