//! Elementary inequalities used to derive the enclosure brackets.
//!
//! Each inequality is evaluated as a [`Bracket`] `(lo, mid, hi)`. The middle
//! quantities are rewritten to avoid cancellation, e.g.
//! `1/sqrt(t) - 1/sqrt(t+x) = x / (sqrt(t) sqrt(t+x) (sqrt(t+x) + sqrt(t)))`.
//! The equality forms (A3 to A8) are returned in their θ view:
//! `(θ_lo, θ, θ_hi)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{ulp_slack, Real};

/// Tolerance band, in ulps, inside which strict inequalities are not asserted.
pub const EQUALITY_BAND_ULPS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IneqId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A6a,
    A7,
    A8,
    A9,
    A10,
    AX,
    AY,
    AZ,
}

impl IneqId {
    pub const ALL: [IneqId; 14] = [
        IneqId::A1,
        IneqId::A2,
        IneqId::A3,
        IneqId::A4,
        IneqId::A5,
        IneqId::A6,
        IneqId::A6a,
        IneqId::A7,
        IneqId::A8,
        IneqId::A9,
        IneqId::A10,
        IneqId::AX,
        IneqId::AY,
        IneqId::AZ,
    ];

    /// Number of arguments after `t`.
    pub fn arity(self) -> usize {
        use IneqId::*;
        match self {
            A1 | A2 | A3 | A4 => 1,
            A5 | A6 | A6a | A7 | AX => 2,
            A8 | A9 | A10 | AY | AZ => 3,
        }
    }

    /// Whether `t = 0` is admissible.
    pub fn allows_zero_t(self) -> bool {
        matches!(self, IneqId::AX | IneqId::AY | IneqId::AZ)
    }

    /// Identities solved for θ; their brackets are in the θ view.
    pub fn is_theta_form(self) -> bool {
        use IneqId::*;
        matches!(self, A3 | A4 | A5 | A6a | A7 | A8)
    }

    /// Strictness of the lower and upper inequality for generic arguments.
    pub fn strictness(self) -> (bool, bool) {
        use IneqId::*;
        match self {
            A5 | A6 | A6a | AX | AZ => (false, false),
            AY => (true, false),
            _ => (true, true),
        }
    }

    /// True when the arguments form a documented equality configuration.
    pub fn is_equality_case<T: Real>(self, args: &[T]) -> bool {
        use IneqId::*;
        match self {
            A5 | A6 | A6a | AX => args[0] == args[1],
            AY => args[0] == args[1] && args[1] == args[2],
            AZ => args[0] == args[1] && args[1] == args[2],
            _ => false,
        }
    }

    pub fn name(self) -> &'static str {
        use IneqId::*;
        match self {
            A1 => "A1",
            A2 => "A2",
            A3 => "A3",
            A4 => "A4",
            A5 => "A5",
            A6 => "A6",
            A6a => "A6a",
            A7 => "A7",
            A8 => "A8",
            A9 => "A9",
            A10 => "A10",
            AX => "AX",
            AY => "AY",
            AZ => "AZ",
        }
    }
}

impl fmt::Display for IneqId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IneqId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        IneqId::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown inequality {s:?}"))
    }
}

/// `lo <= mid <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket<T> {
    pub lo: T,
    pub mid: T,
    pub hi: T,
}

/// Outcome of checking one bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Holds,
    /// Holds, but an inequality stated as strict is an equality to within the band.
    InBand,
    Violated,
}

impl<T: Real> Bracket<T> {
    /// Checks `lo <= mid <= hi` with the equality band, and strictness outside it.
    pub fn check(&self, strict_lo: bool, strict_hi: bool) -> Check {
        let band = |u: T, v: T| ulp_slack(u.abs().max(v.abs()), EQUALITY_BAND_ULPS);
        let d_lo = self.mid - self.lo;
        let d_hi = self.hi - self.mid;
        let b_lo = band(self.lo, self.mid);
        let b_hi = band(self.hi, self.mid);
        if d_lo < -b_lo || d_hi < -b_hi || !(d_lo.is_finite() && d_hi.is_finite()) {
            return Check::Violated;
        }
        let lo_in_band = d_lo.abs() <= b_lo;
        let hi_in_band = d_hi.abs() <= b_hi;
        if (strict_lo && lo_in_band) || (strict_hi && hi_in_band) {
            Check::InBand
        } else {
            Check::Holds
        }
    }
}

fn validate<T: Real>(id: IneqId, t: T, args: &[T]) -> Result<()> {
    if args.len() != id.arity() {
        return Err(Error::domain("bounds", format!("{id} takes t and {} more arguments", id.arity())));
    }
    let t_ok = if id.allows_zero_t() { t >= T::zero() } else { t > T::zero() };
    if !t.is_finite() || !t_ok {
        return Err(Error::domain("bounds", "t out of range"));
    }
    if args.iter().any(|v| !v.is_finite() || *v <= T::zero()) {
        return Err(Error::domain("bounds", "arguments must be positive"));
    }
    Ok(())
}

/// `1 + 1/(w (w + 1))`, the solved form shared by A3 and A4.
fn theta_a3<T: Real>(w: T) -> T {
    T::one() + T::one() / (w * (w + T::one()))
}

/// `(sqrt((t+x)(t+y)) - g) / t`, decreasing from `a/g` to `1`.
fn phi<T: Real>(t: T, x: T, y: T) -> T {
    let g = x.sqrt() * y.sqrt();
    let sp = (t + x).sqrt() * (t + y).sqrt();
    (t + x + y) / (sp + g)
}

/// Solves an equality form for θ.
pub fn theta_of<T: Real>(id: IneqId, t: T, args: &[T]) -> Result<T> {
    validate(id, t, args)?;
    let th = match id {
        IneqId::A3 => theta_a3((T::one() + args[0] / t).sqrt()),
        IneqId::A4 => theta_a3((T::one() + t / args[0]).sqrt()),
        IneqId::A5 => {
            let (x, y) = (args[0], args[1]);
            let sp = (t + x).sqrt() * (t + y).sqrt();
            (t * (x + y) + x * y) / (sp + t)
        }
        IneqId::A6a => {
            let (x, y) = (args[0], args[1]);
            if x == y {
                return Ok(T::one());
            }
            let g = x.sqrt() * y.sqrt();
            let sp = (t + x).sqrt() * (t + y).sqrt();
            (t + x + y) * (t + g) / ((sp + g) * sp)
        }
        IneqId::A7 => {
            let (x, y) = (args[0], args[1]);
            let r = (t + x).sqrt();
            T::one() + y / (r * (r + x.sqrt()))
        }
        IneqId::A8 => {
            let (x, y, z) = (args[0], args[1], args[2]);
            let g = x.sqrt() * y.sqrt();
            phi(t, x, y) + g / (t + z)
        }
        _ => {
            return Err(Error::domain("bounds", format!("{id} has no θ form")));
        }
    };
    Ok(th)
}

/// Evaluates inequality `id` at `t` and `args` (`x`, `x y` or `x y z`).
pub fn bracket<T: Real>(id: IneqId, t: T, args: &[T]) -> Result<Bracket<T>> {
    validate(id, t, args)?;
    let one = T::one();
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let b = match id {
        IneqId::A1 | IneqId::A2 => {
            // A2 is A1 with t and x interchanged
            let (t, x) = if id == IneqId::A1 { (t, args[0]) } else { (args[0], t) };
            let (st, sx) = (t.sqrt(), (t + x).sqrt());
            Bracket {
                lo: x / (two * st * (t + x)),
                mid: x / (st * sx * (sx + st)),
                hi: x / (two * t * sx),
            }
        }
        IneqId::A3 | IneqId::A4 => Bracket {
            lo: one,
            mid: theta_of(id, t, args)?,
            hi: T::lit(1.5),
        },
        IneqId::A5 => {
            let (x, y) = (args[0], args[1]);
            let (g, a) = (x.sqrt() * y.sqrt(), (x + y) / two);
            let mid = if x == y { x } else { theta_of(id, t, args)? };
            Bracket { lo: g.min(a), mid, hi: a }
        }
        IneqId::A6 => {
            let (x, y) = (args[0], args[1]);
            let (g, a) = (x.sqrt() * y.sqrt(), (x + y) / two);
            let sp = (t + x).sqrt() * (t + y).sqrt();
            Bracket {
                lo: t / (g * (t + g)),
                mid: t * (t + two * a) / ((sp + g) * g * sp),
                hi: a * t / (g * g * sp),
            }
        }
        IneqId::A6a => {
            let (x, y) = (args[0], args[1]);
            let (g, a) = (x.sqrt() * y.sqrt(), (x + y) / two);
            Bracket {
                lo: one,
                mid: theta_of(id, t, args)?,
                hi: if x == y { one } else { a / g },
            }
        }
        IneqId::A7 => {
            let (x, y) = (args[0], args[1]);
            Bracket {
                lo: one,
                mid: theta_of(id, t, args)?,
                hi: one + y / (two * x),
            }
        }
        IneqId::A8 => {
            let (x, y, z) = (args[0], args[1], args[2]);
            let (g, a) = (x.sqrt() * y.sqrt(), (x + y) / two);
            Bracket {
                lo: one,
                mid: theta_of(id, t, args)?,
                hi: a / g + g / z,
            }
        }
        IneqId::A9 => {
            let (x, y, z) = (args[0], args[1], args[2]);
            let a = (x + y + z) / three;
            let e2 = x * y + x * z + y * z;
            let b = (three * e2).sqrt() / two;
            let t15 = t * t.sqrt();
            let sq = (t + x).sqrt() * (t + y).sqrt() * (t + z).sqrt();
            let num = t * t * (x + y + z) + t * e2 + x * y * z;
            Bracket {
                lo: b / (t15 * (t + b)),
                mid: num / (t15 * sq * (sq + t15)),
                hi: three * a / (two * t15 * (t + a)),
            }
        }
        IneqId::A10 => {
            let (x, y, z) = (args[0], args[1], args[2]);
            let g = (x * y * z).cbrt();
            let h = three / (x.recip() + y.recip() + z.recip());
            let g15 = g * g.sqrt();
            let e2 = x * y + x * z + y * z;
            let r = x.sqrt() * y.sqrt() * z.sqrt();
            let sq = (t + x).sqrt() * (t + y).sqrt() * (t + z).sqrt();
            let num = t * t * t + t * t * (x + y + z) + t * e2;
            Bracket {
                lo: t / (g15 * (t + g)),
                mid: num / (r * sq * (sq + r)),
                hi: three * t / (two * g15 * (t + h)),
            }
        }
        IneqId::AX => {
            let (x, y) = (args[0], args[1]);
            let (g, a) = (x.sqrt() * y.sqrt(), (x + y) / two);
            Bracket {
                lo: t + g,
                mid: (t + x).sqrt() * (t + y).sqrt(),
                hi: t + a,
            }
        }
        IneqId::AY => {
            let (x, y, z) = (args[0], args[1], args[2]);
            let a = (x + y + z) / three;
            let b = (three * (x * y + x * z + y * z)).sqrt() / two;
            let ta = t + a;
            Bracket {
                lo: t.sqrt() * (t + b),
                mid: (t + x).sqrt() * (t + y).sqrt() * (t + z).sqrt(),
                hi: ta * ta.sqrt(),
            }
        }
        IneqId::AZ => {
            let (x, y, z) = (args[0], args[1], args[2]);
            let g = (x * y * z).cbrt();
            let h = three / (x.recip() + y.recip() + z.recip());
            let (tg, th) = (t + g, t + h);
            Bracket {
                lo: tg * tg.sqrt(),
                mid: (t + x).sqrt() * (t + y).sqrt() * (t + z).sqrt(),
                hi: (g / h * th) * (g / h * th).sqrt(),
            }
        }
    };
    Ok(b)
}

/// The two intermediate bounds through which (AZ) and (A4) give (A10):
/// `lo_A10 <= g^(-3/2) - (t+g)^(-3/2) <= mid_A10 <= g^(-3/2) - ((g/h)(t+h))^(-3/2) <= hi_A10`.
/// Returned as a bracket around the (A10) middle quantity.
pub fn a10_via_az<T: Real>(t: T, x: T, y: T, z: T) -> Result<Bracket<T>> {
    let mid = bracket(IneqId::A10, t, &[x, y, z])?;
    let three = T::lit(3.0);
    let g = (x * y * z).cbrt();
    let h = three / (x.recip() + y.recip() + z.recip());
    let g15 = g * g.sqrt();
    let h15 = h * h.sqrt();
    let lo = theta_of(IneqId::A4, t, &[g])? * t / (g15 * (t + g));
    let hi = h15 / g15 * theta_of(IneqId::A4, t, &[h])? * t / (h15 * (t + h));
    Ok(Bracket { lo, mid: mid.mid, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a5_equality_at_equal_arguments() {
        let b = bracket(IneqId::A5, 1.0, &[4.0, 4.0]).unwrap();
        assert_eq!((b.lo, b.mid, b.hi), (4.0, 4.0, 4.0));
    }

    #[test]
    fn a3_closed_form() {
        let b = bracket(IneqId::A3, 1.0, &[1.0]).unwrap();
        let w = 2f64.sqrt();
        assert!((b.mid - (1.0 + 1.0 / (w * (w + 1.0)))).abs() < 1e-15);
        assert!((b.mid - 1.2928932).abs() < 1e-7);
        assert!(b.lo < b.mid && b.mid < b.hi);
    }

    #[test]
    fn ax_at_zero_t_is_am_gm() {
        let b = bracket(IneqId::AX, 0.0, &[1.0, 4.0]).unwrap();
        assert_eq!((b.lo, b.mid, b.hi), (2.0, 2.0, 2.5));
        assert!(bracket(IneqId::A1, 0.0, &[1.0]).is_err());
    }

    #[test]
    fn a9_at_unit_arguments() {
        let b = bracket(IneqId::A9, 1.0, &[1.0, 1.0, 1.0]).unwrap();
        let direct = 1.0 - 2f64.powf(-1.5);
        assert!((b.mid - direct).abs() < 1e-15);
        assert!(b.lo < b.mid && b.mid < b.hi);
    }

    #[test]
    fn theta_of_values() {
        assert_eq!(theta_of(IneqId::A6a, 0.7, &[3.0, 3.0]).unwrap(), 1.0);
        // theta runs from g at t -> 0 to a as t -> infinity
        let th = theta_of(IneqId::A5, 1e-12, &[1.0, 2.0]).unwrap();
        assert!((th - 2f64.sqrt()).abs() < 1e-10);
        let th: f64 = theta_of(IneqId::A5, 1e12, &[1.0, 2.0]).unwrap();
        assert!((th - 1.5).abs() < 1e-10);
        let th = theta_of(IneqId::A8, 1.0, &[1.0, 2.0, 3.0]).unwrap();
        let g = 2f64.sqrt();
        assert!(th > 1.0 && th < 1.5 / g + g / 3.0);
        assert!(theta_of(IneqId::A9, 1.0, &[1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn a8_theta_solves_the_identity() {
        let (t, x, y, z): (f64, f64, f64, f64) = (0.3, 2.0, 5.0, 0.7);
        let g = (x * y).sqrt();
        let sp = ((t + x) * (t + y)).sqrt();
        let lhs = 1.0 / (g * z) - 1.0 / (sp * (t + z));
        let th = theta_of(IneqId::A8, t, &[x, y, z]).unwrap();
        let rhs = th * t / (g * z * sp);
        assert!((lhs - rhs).abs() < 1e-14 * lhs);
    }

    #[test]
    fn interchange_symmetry() {
        let (t, x) = (0.37f64, 5.5);
        let a2 = bracket(IneqId::A2, t, &[x]).unwrap();
        let a1 = bracket(IneqId::A1, x, &[t]).unwrap();
        assert_eq!(a1, a2);
        assert_eq!(
            theta_of(IneqId::A4, t, &[x]).unwrap(),
            theta_of(IneqId::A3, x, &[t]).unwrap()
        );
    }

    #[test]
    fn check_flags_violations_and_band() {
        let ok = Bracket { lo: 1.0, mid: 2.0, hi: 3.0 };
        assert_eq!(ok.check(true, true), Check::Holds);
        let eq = Bracket { lo: 2.0, mid: 2.0, hi: 3.0 };
        assert_eq!(eq.check(true, true), Check::InBand);
        assert_eq!(eq.check(false, true), Check::Holds);
        let bad = Bracket { lo: 2.1, mid: 2.0, hi: 3.0 };
        assert_eq!(bad.check(false, false), Check::Violated);
    }
}
