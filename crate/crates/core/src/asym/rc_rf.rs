//! C1, C2, F1, F2 and the Legendre `K` cases.

use super::{model_closed, model_open, Built, CaseId, Link};
use crate::error::{Error, Result};
use crate::reference::agm;
use crate::scalar::Real;

pub(super) fn build<T: Real>(case: CaseId, args: &[T]) -> Result<Built<T>> {
    use CaseId::*;
    match case {
        C1 => c1(args[0], args[1]),
        C2a | C2b | C2c => c2(case, args[0], args[1]),
        F1a | F1b | F1c | F1d => f1(case, args[0], args[1], args[2]),
        F1e | F1f => f1_legendre(case, args[0]),
        F2a => f2a(args[0], args[1], args[2]),
        _ => unreachable!("{case} is not an R_C/R_F case"),
    }
}

fn c1<T: Real>(x: T, y: T) -> Result<Built<T>> {
    if !(x < y) {
        return Err(Error::regime(CaseId::C1, "x < y"));
    }
    let base = T::FRAC_PI_2() / y.sqrt() - x.sqrt() / y;
    let scale = T::PI() * x / (T::lit(4.0) * y * y.sqrt());
    let lo = T::one() / (T::one() + (x / y).sqrt());
    // equalities iff x = 0
    let model = if x == T::zero() {
        model_closed(base, scale, Link::Linear, lo, T::one())
    } else {
        model_open(base, scale, Link::Linear, lo, T::one())
    };
    Ok(Built::new(model, x / y))
}

fn c2<T: Real>(case: CaseId, x: T, y: T) -> Result<Built<T>> {
    let two = T::lit(2.0);
    if !(y > T::zero() && y < two * x) {
        return Err(Error::regime(case, "0 < y < 2x"));
    }
    let c = T::one() / (two * x.sqrt());
    let l4 = (T::lit(4.0) * x / y).ln();
    let lxy = (x / y).ln();
    let d = two * x - y;
    let (base, scale) = match case {
        CaseId::C2b => {
            let u = y / (two * x);
            let k = T::lit(3.0) * y * y / (T::lit(4.0) * x * d);
            (c * ((T::one() + u) * l4 - u + k * lxy), c * k)
        }
        _ => {
            let k = y / d;
            (c * (l4 + k * lxy), c * k)
        }
    };
    let model = model_open(base, scale, Link::Log, T::one(), T::lit(4.0));
    let mut b = Built::new(model, y / x);
    if case == CaseId::C2c {
        b.hi_override = Some(l4 / (two * x.sqrt() * (T::one() - y / (two * x))));
    }
    Ok(b)
}

fn f1<T: Real>(case: CaseId, x: T, y: T, z: T) -> Result<Built<T>> {
    let two = T::lit(2.0);
    let a = (x + y) / two;
    let g = x.sqrt() * y.sqrt();
    if !(a < two * z && g < z) {
        return Err(Error::regime(case, "a < 2z and g < z"));
    }
    let rho = x.max(y) / z;
    let c = T::one() / (two * z.sqrt());
    let l8 = (T::lit(8.0) * z / (a + g)).ln();
    let upper = l8 / (T::one() - a / (two * z));
    let built = match case {
        CaseId::F1a | CaseId::F1b => {
            let lo = g / (T::one() - g / z) * (two * z / (a + g)).ln();
            let model = model_open(c * l8, c / (two * z), Link::Linear, lo, a * upper);
            let mut b = Built::new(model, rho);
            if case == CaseId::F1b {
                b.hi_override = Some(l8 / (two * z.sqrt() * (T::one() - a / (two * z))));
            }
            b
        }
        _ => {
            if !(rho < T::one()) {
                return Err(Error::regime(case, "max(x, y) < z"));
            }
            let lo = (T::one() / rho).ln() / (T::one() - rho);
            let (base, scale) = if case == CaseId::F1c {
                (c * l8, c * a / (two * z))
            } else {
                let base = c * ((T::one() + a / (two * z)) * l8 - (two * a - g) / (two * z));
                let scale = c * T::lit(3.0) * (T::lit(3.0) * a * a - g * g) / (T::lit(16.0) * z * z);
                (base, scale)
            };
            Built::new(model_open(base, scale, Link::Linear, lo, upper), rho)
        }
    };
    Ok(built)
}

fn f1_legendre<T: Real>(case: CaseId, kp: T) -> Result<Built<T>> {
    let kp2 = kp * kp;
    let four = T::lit(4.0);
    let l4 = (four / kp).ln();
    let lk = kp.ln();
    let (base, scale) = if case == CaseId::F1e {
        let c = kp2 / (four - kp2);
        (l4 - c * lk, c)
    } else {
        let c = T::lit(9.0) * kp2 * kp2 / (T::lit(16.0) * (four - kp2));
        ((T::one() + kp2 / four) * l4 - kp2 / four - c * lk, c)
    };
    Ok(Built::new(model_open(base, scale, Link::Log, T::one(), four), kp2))
}

fn f2a<T: Real>(x: T, y: T, z: T) -> Result<Built<T>> {
    let a = (x + y) / T::lit(2.0);
    let g = x.sqrt() * y.sqrt();
    if !(z < g) {
        return Err(Error::regime(CaseId::F2a, "z < g"));
    }
    let complete = T::FRAC_PI_2() / agm(x.sqrt(), y.sqrt())?;
    let base = complete - z.sqrt() / g;
    let scale = T::PI() * z / (T::lit(4.0) * g * g.sqrt());
    let lo = T::one() / (T::one() + (z / g).sqrt());
    Ok(Built::new(model_open(base, scale, Link::Linear, lo, a / g), z / x.min(y)))
}
