//! Adaptive quadrature of the defining integrals.
//!
//! Independent of [`crate::reference`]: nothing here calls the duplication
//! algorithm or the closed forms. Half-line integrals are mapped to `[0, 1)`
//! by `t = s^2`, `s = u / (1 - u)`, which leaves a bounded integrand both for
//! a zero argument (`t^(-1/2)` at the origin) and for `t^(-3/2)` decay.
//! Principal values use the folded form
//! `PV int_0^{2c} g(t) / (t - c) dt = int_0^c (g(c + s) - g(c - s)) / s ds`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Target relative error of [`oracle`].
pub const ORACLE_REL_TOL: f64 = 1e-11;

const MAX_SEGMENTS: usize = 4000;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Integral value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad<T> {
    pub value: T,
    /// Sum of `|K15 - G7|` over the final partition plus a roundoff term.
    pub error: T,
    pub segments: usize,
}

/// Integral that [`oracle`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    RC,
    RF,
    RD,
    RJ,
    RG,
    /// `int_0^inf [(t + x)(t + y)]^(-1/2) (t + z)^(-1) dt`
    Rm1,
}

impl Kind {
    pub fn arity(self) -> usize {
        match self {
            Kind::RC => 2,
            Kind::RJ => 4,
            _ => 3,
        }
    }
}

struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    abs: T,
}

fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Segment<T> {
    let half = (b - a) * T::lit(0.5);
    let centre = (a + b) * T::lit(0.5);
    let fc = f(centre);
    let mut k = fc * T::lit(WGK[7]);
    let mut g = fc * T::lit(WG[3]);
    let mut abs = fc.abs() * T::lit(WGK[7]);
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let (f1, f2) = (f(centre - dx), f(centre + dx));
        k = k + (f1 + f2) * T::lit(WGK[j]);
        abs = abs + (f1.abs() + f2.abs()) * T::lit(WGK[j]);
        if j % 2 == 1 {
            g = g + (f1 + f2) * T::lit(WG[j / 2]);
        }
    }
    Segment {
        a,
        b,
        value: k * half,
        error: ((k - g) * half).abs(),
        abs: abs * half.abs(),
    }
}

/// Adaptive Gauss-Kronrod 7/15 over `[a, b]` with initial breakpoints.
///
/// Bisects the segment with the largest error estimate until the summed
/// estimate is below `rel_tol * |value|`, or below the roundoff floor of the
/// integral of `|f|`.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    breaks: &[T],
    rel_tol: T,
) -> Result<Quad<T>> {
    let rel_tol = rel_tol.max(T::lit(50.0) * T::epsilon());
    let mut pts: Vec<T> = breaks
        .iter()
        .copied()
        .filter(|p| p.is_finite() && *p > a && *p < b)
        .collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(|u, v| u.partial_cmp(v).unwrap());
    pts.dedup();
    let mut live: Vec<Segment<T>> = pts.windows(2).map(|w| gk15(&f, w[0], w[1])).collect();
    let mut frozen_value = T::zero();
    let mut frozen_error = T::zero();
    let mut frozen_abs = T::zero();
    let mut count = live.len();
    loop {
        let value = live.iter().fold(frozen_value, |s, g| s + g.value);
        let error = live.iter().fold(frozen_error, |s, g| s + g.error);
        let abs = live.iter().fold(frozen_abs, |s, g| s + g.abs);
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Convergence("non-finite integrand".into()));
        }
        let roundoff = T::lit(50.0) * T::epsilon() * abs;
        if error <= rel_tol * value.abs() || error <= roundoff {
            return Ok(Quad {
                value,
                error: error + roundoff,
                segments: count,
            });
        }
        let Some((worst, _)) = live
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap())
        else {
            return Err(Error::Convergence(format!(
                "estimate {error:e} exceeds target with no splittable segment"
            )));
        };
        if count >= MAX_SEGMENTS {
            return Err(Error::Convergence(format!(
                "{MAX_SEGMENTS} segments reached, error estimate {error:e} vs value {value:e}"
            )));
        }
        let seg = live.swap_remove(worst);
        let mid = (seg.a + seg.b) * T::lit(0.5);
        if !(mid > seg.a && mid < seg.b)
            || (seg.b - seg.a) <= T::lit(64.0) * T::epsilon() * seg.a.abs().max(seg.b.abs())
        {
            frozen_value = frozen_value + seg.value;
            frozen_error = frozen_error + seg.error;
            frozen_abs = frozen_abs + seg.abs;
            continue;
        }
        live.push(gk15(&f, seg.a, mid));
        live.push(gk15(&f, mid, seg.b));
        count += 1;
    }
}

/// `int_0^inf f(t) dt` for integrands with `O(t^(-3/2))` decay or faster.
///
/// `scales` are the values of `t` where `f` changes character (the integral's
/// arguments); they become breakpoints after normalizing by their maximum.
pub fn integrate_half_line<T: Real, F: Fn(T) -> T>(
    f: F,
    scales: &[T],
    rel_tol: T,
) -> Result<Quad<T>> {
    let m = scales.iter().fold(T::zero(), |m, s| m.max(s.abs()));
    let m = if m > T::zero() && m.is_finite() { m } else { T::one() };
    let one = T::one();
    let g = |u: T| {
        if u >= one {
            return T::zero();
        }
        let s = u / (one - u);
        let ds = one / ((one - u) * (one - u));
        let v = m * f(m * s * s) * T::lit(2.0) * s * ds;
        if v.is_finite() {
            v
        } else {
            T::zero()
        }
    };
    let breaks: Vec<T> = scales
        .iter()
        .filter(|c| c.abs() > T::zero())
        .map(|c| {
            let r = (c.abs() / m).sqrt();
            r / (one + r)
        })
        .collect();
    integrate(g, T::zero(), one, &breaks, rel_tol)
}

fn check_args<T: Real>(kind: Kind, args: &[T]) -> Result<()> {
    let name = "oracle";
    if args.len() != kind.arity() {
        return Err(Error::domain(name, format!("{kind:?} takes {} arguments", kind.arity())));
    }
    if args.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain(name, "arguments must be finite"));
    }
    let zero = T::zero();
    let bad = match kind {
        Kind::RC => args[0] < zero || args[1] <= zero,
        Kind::Rm1 => args.iter().any(|v| *v <= zero),
        Kind::RF | Kind::RD | Kind::RJ | Kind::RG => {
            let sym = &args[..3];
            let zeros = sym.iter().filter(|v| **v == zero).count();
            let two_zero_ok = kind == Kind::RG;
            sym.iter().any(|v| *v < zero)
                || (zeros > 1 && !(two_zero_ok && zeros == 2))
                || (kind == Kind::RD && args[2] <= zero)
                || (kind == Kind::RJ && args[3] <= zero)
        }
    };
    if bad {
        return Err(Error::domain(name, format!("{kind:?} arguments outside domain")));
    }
    Ok(())
}

/// Evaluates the defining integral of `kind` at `args` by quadrature.
///
/// `RC (x, y)`, `RF/RD/RG/Rm1 (x, y, z)`, `RJ (x, y, z, p)`.
pub fn oracle<T: Real>(kind: Kind, args: &[T]) -> Result<Quad<T>> {
    check_args(kind, args)?;
    let tol = T::lit(ORACLE_REL_TOL);
    let half = T::lit(0.5);
    let r = |t: T, v: T| (t + v).sqrt();
    match kind {
        Kind::RC => {
            let (x, y) = (args[0], args[1]);
            integrate_half_line(|t| half / (r(t, x) * (t + y)), args, tol)
        }
        Kind::RF => {
            let (x, y, z) = (args[0], args[1], args[2]);
            integrate_half_line(|t| half / (r(t, x) * r(t, y) * r(t, z)), args, tol)
        }
        Kind::RD => {
            let (x, y, z) = (args[0], args[1], args[2]);
            let c = T::lit(1.5);
            integrate_half_line(|t| c / (r(t, x) * r(t, y) * r(t, z) * (t + z)), args, tol)
        }
        Kind::RJ => {
            let (x, y, z, p) = (args[0], args[1], args[2], args[3]);
            let c = T::lit(1.5);
            integrate_half_line(|t| c / (r(t, x) * r(t, y) * r(t, z) * (t + p)), args, tol)
        }
        Kind::RG => {
            let (x, y, z) = (args[0], args[1], args[2]);
            let q = T::lit(0.25);
            integrate_half_line(
                |t| {
                    let w = x / (t + x) + y / (t + y) + z / (t + z);
                    let w = if w.is_finite() { w } else { T::zero() };
                    q * t * w / (r(t, x) * r(t, y) * r(t, z))
                },
                args,
                tol,
            )
        }
        Kind::Rm1 => {
            let (x, y, z) = (args[0], args[1], args[2]);
            integrate_half_line(|t| T::one() / (r(t, x) * r(t, y) * (t + z)), args, tol)
        }
    }
}

/// `PV int_0^inf g(t) / (t - c) dt` for `c > 0` and `g` smooth on `(0, inf)`
/// with at most a `t^(-1/2)` singularity at the origin and `O(t^(-1/2))` decay.
fn principal_value<T: Real, G: Fn(T) -> T>(g: G, c: T, scales: &[T], rel_tol: T) -> Result<Quad<T>> {
    let one = T::one();
    let two = T::lit(2.0);
    // s = c (1 - w^2) on [0, c]; the t^(-1/2) singularity at t = c - s = c w^2 is absorbed by ds
    let folded = |w: T| {
        let w2 = w * w;
        let s = c * (one - w2);
        if s <= T::zero() {
            return T::zero();
        }
        let v = (g(c + s) - g(c * w2)) / s * two * c * w;
        if v.is_finite() {
            v
        } else {
            T::zero()
        }
    };
    let breaks: Vec<T> = scales
        .iter()
        .filter(|v| **v > T::zero() && **v < c)
        .map(|v| (*v / c).sqrt())
        .collect();
    let near = integrate(folded, T::zero(), one, &breaks, rel_tol)?;
    // tail: int_0^inf g(2c + tau) / (c + tau) dtau
    let mut tail_scales: Vec<T> = scales.iter().map(|v| *v + two * c).collect();
    tail_scales.push(c);
    let tail = integrate_half_line(|tau| g(two * c + tau) / (c + tau), &tail_scales, rel_tol)?;
    Ok(Quad {
        value: near.value + tail.value,
        error: near.error + tail.error,
        segments: near.segments + tail.segments,
    })
}

/// Quadrature of the principal value `R_C(x, -y_abs)`.
pub fn oracle_rc_pv<T: Real>(x: T, y_abs: T) -> Result<Quad<T>> {
    if !(x.is_finite() && y_abs.is_finite()) || x < T::zero() || y_abs <= T::zero() {
        return Err(Error::domain("oracle_rc_pv", "need x >= 0, y_abs > 0"));
    }
    let half = T::lit(0.5);
    principal_value(|t| half / (t + x).sqrt(), y_abs, &[x], T::lit(ORACLE_REL_TOL))
}

/// Quadrature of the principal value `R_J(x, y, z, -p_abs)`.
pub fn oracle_rj_pv<T: Real>(x: T, y: T, z: T, p_abs: T) -> Result<Quad<T>> {
    let all = [x, y, z, p_abs];
    if all.iter().any(|v| !v.is_finite() || *v <= T::zero()) {
        return Err(Error::domain("oracle_rj_pv", "need x, y, z, p_abs > 0"));
    }
    let c = T::lit(1.5);
    principal_value(
        |t| c / ((t + x).sqrt() * (t + y).sqrt() * (t + z).sqrt()),
        p_abs,
        &[x, y, z],
        T::lit(ORACLE_REL_TOL),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(q: Quad<f64>, v: f64, tol: f64) -> bool {
        (q.value - v).abs() <= tol * v.abs()
    }

    #[test]
    fn trivial_values() {
        assert!(close(oracle(Kind::RF, &[1.0, 1.0, 1.0]).unwrap(), 1.0, 1e-10));
        assert!(close(oracle(Kind::RC, &[2.0, 1.0]).unwrap(), (1.0 + 2f64.sqrt()).ln(), 1e-10));
        assert!(close(oracle(Kind::RC, &[0.0, 1.0]).unwrap(), FRAC_PI_2, 1e-10));
        assert!(close(oracle(Kind::RD, &[0.0, 1.0, 1.0]).unwrap(), 0.75 * PI, 1e-10));
        assert!(close(oracle(Kind::RG, &[0.0, 1.0, 1.0]).unwrap(), PI / 4.0, 1e-10));
        assert!(close(oracle(Kind::RG, &[0.0, 0.0, 4.0]).unwrap(), 1.0, 1e-10));
        assert!(close(oracle(Kind::Rm1, &[3.0, 3.0, 3.0]).unwrap(), 1.0 / 3.0, 1e-10));
        assert!(close(oracle(Kind::RJ, &[2.0, 2.0, 2.0, 2.0]).unwrap(), 2f64.powf(-1.5), 1e-10));
    }

    #[test]
    fn skewed_arguments_converge() {
        // R_C(1, 1e-7) and R_C(1e-7, 1) via elementary functions
        let y: f64 = 1e-7;
        let expect = ((1.0 + (1.0 - y).sqrt()) / y.sqrt()).ln() / (1.0 - y).sqrt();
        assert!(close(oracle(Kind::RC, &[1.0, y]).unwrap(), expect, 1e-10));
        let expect = (1.0f64 - y).sqrt().atan2(y.sqrt()) / (1.0 - y).sqrt();
        assert!(close(oracle(Kind::RC, &[y, 1.0]).unwrap(), expect, 1e-10));
    }

    #[test]
    fn finite_interval() {
        let q = integrate(|t: f64| t.exp(), 0.0, 1.0, &[], 1e-13).unwrap();
        assert!((q.value - (1f64.exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn principal_values() {
        // R_C(x, -y) = sqrt(x / (x + y)) R_C(x + y, y), written out elementarily
        let (x, y): (f64, f64) = (1.0, 1.0);
        let s = x + y;
        let expect = (x / s).sqrt() * ((s.sqrt() + (s - y).sqrt()) / y.sqrt()).ln() / (s - y).sqrt();
        assert!(close(oracle_rc_pv(x, y).unwrap(), expect, 1e-10));
        assert!(oracle_rc_pv(0.0f64, 1.0).unwrap().value.abs() < 1e-10);
    }

    #[test]
    fn domain_checks() {
        assert!(oracle(Kind::RF, &[0.0, 0.0, 1.0]).is_err());
        assert!(oracle(Kind::RJ, &[1.0, 1.0, 1.0, -1.0]).is_err());
        assert!(oracle(Kind::RC, &[1.0]).is_err());
    }

    #[test]
    fn f32_quadrature() {
        let q = oracle(Kind::RF, &[1.0f32, 2.0, 4.0]).unwrap();
        let w = oracle(Kind::RF, &[1.0f64, 2.0, 4.0]).unwrap();
        assert!(((q.value as f64) - w.value).abs() < 1e-5 * w.value);
    }
}
