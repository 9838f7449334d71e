//! Asymptotic approximations packaged as enclosures.
//!
//! Every case is affine in its error symbol (θ, r or s) after an optional
//! link: `value = base + scale * link(symbol)`. Substituting the two bracket
//! endpoints of the symbol gives the enclosure; inverting the same relation
//! for a known value recovers the realized symbol.

mod case;
mod rc_rf;
mod rd;
mod rg;
mod rj;

pub use case::{CaseId, FuncKind};

use crate::error::{Error, Result};
use crate::scalar::{ulp_slack, Real};

/// Outward widening applied to both enclosure endpoints.
pub const WIDEN_ULPS: u32 = 8;

/// How the error symbol enters the case formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Link<T> {
    Linear,
    /// `ln(symbol)`
    Log,
    /// `1 / (1 - symbol / p)`
    Pole(T),
}

impl<T: Real> Link<T> {
    fn apply(self, s: T) -> T {
        match self {
            Link::Linear => s,
            Link::Log => s.ln(),
            Link::Pole(p) => T::one() / (T::one() - s / p),
        }
    }

    fn invert(self, w: T) -> T {
        match self {
            Link::Linear => w,
            Link::Log => w.exp(),
            Link::Pole(p) => p * (T::one() - T::one() / w),
        }
    }

    /// `|d symbol / d link|` at link value `w`.
    fn inverse_slope(self, w: T) -> T {
        match self {
            Link::Linear => T::one(),
            Link::Log => w.exp(),
            Link::Pole(p) => (p / (w * w)).abs(),
        }
    }

    /// `|link(hi) - link(lo)|` without cancellation.
    fn span(self, lo: T, hi: T) -> T {
        match self {
            Link::Linear => (hi - lo).abs(),
            Link::Log => (hi / lo).ln().abs(),
            Link::Pole(p) => ((hi - lo) / p / ((T::one() - hi / p) * (T::one() - lo / p))).abs(),
        }
    }
}

/// The affine model of one case at one argument tuple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model<T> {
    pub base: T,
    pub scale: T,
    pub link: Link<T>,
    /// Bracket of the error symbol, `sym_lo <= sym_hi`.
    pub sym_lo: T,
    pub sym_hi: T,
    /// Whether each symbol endpoint can be attained.
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl<T: Real> Model<T> {
    fn at(&self, s: T) -> T {
        self.base + self.scale * self.link.apply(s)
    }
}

/// Strictness of the two value endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strict {
    pub lo: bool,
    pub hi: bool,
}

/// Smallness parameter and validity flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime<T> {
    pub ratio: T,
    /// False when the upper endpoint does not come from the case's bracket
    /// (G1a without `5a < z`).
    pub upper_valid: bool,
}

/// Certified interval for an integral value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Enclosure<T> {
    pub lo: T,
    pub hi: T,
    pub estimate: T,
    pub case: CaseId,
    pub strict: Strict,
    pub regime: Regime<T>,
    /// `|scale * (link(sym_hi) - link(sym_lo))|`, the width before widening,
    /// computed without cancellation against `base`.
    pub raw_width: T,
    pub model: Model<T>,
}

impl<T: Real> Enclosure<T> {
    pub fn contains(&self, v: T) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    /// Half-width relative to the smaller endpoint magnitude.
    pub fn rel_halfwidth(&self) -> T {
        let m = self.lo.abs().min(self.hi.abs());
        (self.hi - self.lo) / (T::lit(2.0) * m)
    }

    fn build(case: CaseId, model: Model<T>, regime: Regime<T>, hi_override: Option<T>) -> Self {
        let v_lo = model.at(model.sym_lo);
        let v_hi = model.at(model.sym_hi);
        let increasing = v_lo <= v_hi;
        let (mut a, mut b) = if increasing { (v_lo, v_hi) } else { (v_hi, v_lo) };
        let (mut sa, mut sb) = if increasing {
            (!model.closed_lo, !model.closed_hi)
        } else {
            (!model.closed_hi, !model.closed_lo)
        };
        let mut raw_width = (model.scale * model.link.span(model.sym_lo, model.sym_hi)).abs();
        if let Some(h) = hi_override {
            b = h;
            sb = false;
            raw_width = h - a;
        }
        if model.scale == T::zero() {
            // error term vanishes: the formula is exact
            sa = false;
            sb = false;
            let m = (a + b) / T::lit(2.0);
            a = m;
            b = m;
        }
        let estimate = (a + b) / T::lit(2.0);
        Enclosure {
            lo: a.widen_down(WIDEN_ULPS),
            hi: b.widen_up(WIDEN_ULPS),
            estimate,
            case,
            strict: Strict { lo: sa, hi: sb },
            regime,
            raw_width,
            model,
        }
    }
}

/// What a case builder returns.
pub(crate) struct Built<T> {
    pub model: Model<T>,
    pub regime: Regime<T>,
    pub hi_override: Option<T>,
}

impl<T: Real> Built<T> {
    pub(crate) fn new(model: Model<T>, ratio: T) -> Self {
        Built {
            model,
            regime: Regime { ratio, upper_valid: true },
            hi_override: None,
        }
    }
}

pub(crate) fn model_open<T>(base: T, scale: T, link: Link<T>, lo: T, hi: T) -> Model<T> {
    Model {
        base,
        scale,
        link,
        sym_lo: lo,
        sym_hi: hi,
        closed_lo: false,
        closed_hi: false,
    }
}

pub(crate) fn model_closed<T>(base: T, scale: T, link: Link<T>, lo: T, hi: T) -> Model<T> {
    Model {
        closed_lo: true,
        closed_hi: true,
        ..model_open(base, scale, link, lo, hi)
    }
}

fn check_args<T: Real>(case: CaseId, args: &[T]) -> Result<()> {
    let func = case.func();
    if args.len() != func.arity() {
        return Err(Error::domain(
            "asym",
            format!("{case} takes {} arguments, got {}", func.arity(), args.len()),
        ));
    }
    if args.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("asym", "arguments must be finite"));
    }
    match func {
        FuncKind::K | FuncKind::E => {
            if !(args[0] > T::zero() && args[0] < T::one()) {
                return Err(Error::domain("asym", "kprime must lie in (0, 1)"));
            }
        }
        FuncKind::RC => {
            if args[0] < T::zero() || args[1] <= T::zero() {
                return Err(Error::domain("asym", "R_C needs x >= 0, y > 0"));
            }
        }
        _ => {
            crate::reference::Sym3Args::new(args[0], args[1], args[2])?;
            if func == FuncKind::RJ && args[3] <= T::zero() {
                return Err(Error::domain("asym", "p must be positive (principal values are not approximated)"));
            }
            if func == FuncKind::RD && args[2] <= T::zero() {
                return Err(Error::domain("asym", "z must be positive"));
            }
        }
    }
    Ok(())
}

fn built<T: Real>(case: CaseId, args: &[T]) -> Result<Built<T>> {
    check_args(case, args)?;
    use CaseId::*;
    match case {
        C1 | C2a | C2b | C2c | F1a | F1b | F1c | F1d | F1e | F1f | F2a => rc_rf::build(case, args),
        D1 | D2a | D2b | D2c | D3 | D4 => rd::build(case, args),
        J1a | J1b | J2a | J2b | J3 | J4a | J4b | J4c | J5 | J6a | J6complete => rj::build(case, args),
        G1a | G1b | G1c | G2 => rg::build(case, args),
    }
}

/// Enclosure of `case` at `args` (in the order of the integral's arguments;
/// `[kprime]` for F1e, F1f, G1c).
pub fn approx<T: Real>(case: CaseId, args: &[T]) -> Result<Enclosure<T>> {
    let b = built(case, args)?;
    Ok(Enclosure::build(case, b.model, b.regime, b.hi_override))
}

fn expect_func(case: CaseId, f: FuncKind) -> Result<()> {
    if case.func() != f {
        return Err(Error::domain("asym", format!("{case} does not approximate {f}")));
    }
    Ok(())
}

pub fn approx_rc<T: Real>(x: T, y: T, case: CaseId) -> Result<Enclosure<T>> {
    expect_func(case, FuncKind::RC)?;
    approx(case, &[x, y])
}

pub fn approx_rf<T: Real>(x: T, y: T, z: T, case: CaseId) -> Result<Enclosure<T>> {
    expect_func(case, FuncKind::RF)?;
    approx(case, &[x, y, z])
}

pub fn approx_rd<T: Real>(x: T, y: T, z: T, case: CaseId) -> Result<Enclosure<T>> {
    expect_func(case, FuncKind::RD)?;
    approx(case, &[x, y, z])
}

pub fn approx_rj<T: Real>(x: T, y: T, z: T, p: T, case: CaseId) -> Result<Enclosure<T>> {
    expect_func(case, FuncKind::RJ)?;
    approx(case, &[x, y, z, p])
}

pub fn approx_rg<T: Real>(x: T, y: T, z: T, case: CaseId) -> Result<Enclosure<T>> {
    expect_func(case, FuncKind::RG)?;
    approx(case, &[x, y, z])
}

/// `K(k)` with `k' = kprime`, cases F1e and F1f.
pub fn approx_k<T: Real>(kprime: T, case: CaseId) -> Result<Enclosure<T>> {
    expect_func(case, FuncKind::K)?;
    approx(case, &[kprime])
}

/// `E(k)` with `k' = kprime`, case G1c.
pub fn approx_e<T: Real>(kprime: T) -> Result<Enclosure<T>> {
    approx(CaseId::G1c, &[kprime])
}

/// Realized error symbol of a case for a known integral value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recovered<T> {
    pub symbol: T,
    /// Uncertainty of `symbol` from rounding in `value` and `base`.
    pub slack: T,
    pub lo: T,
    pub hi: T,
    pub closed_lo: bool,
    pub closed_hi: bool,
    /// False when the upper symbol endpoint is not certified (G1a without `5a < z`).
    pub upper_valid: bool,
}

impl<T: Real> Recovered<T> {
    /// `lo <= symbol <= hi` up to `slack`.
    pub fn inside(&self) -> bool {
        let hi_ok = !self.upper_valid || self.symbol <= self.hi + self.slack;
        self.symbol >= self.lo - self.slack && hi_ok
    }

    /// Whether the symbol sits on an endpoint (within `slack`).
    pub fn at_endpoint(&self) -> bool {
        (self.symbol - self.lo).abs() <= self.slack || (self.symbol - self.hi).abs() <= self.slack
    }
}

/// Solves the case formula for its error symbol given the true `value`.
///
/// Where the bracket has collapsed (J1b and J4a at `x = y`) or the error
/// term vanishes (C1 at `x = 0`) the shared endpoint is returned exactly.
pub fn theta_recover<T: Real>(case: CaseId, args: &[T], value: T) -> Result<Recovered<T>> {
    let b = built(case, args)?;
    let m = b.model;
    let mut out = Recovered {
        symbol: m.sym_lo,
        slack: T::zero(),
        lo: m.sym_lo,
        hi: m.sym_hi,
        closed_lo: m.closed_lo,
        closed_hi: m.closed_hi,
        upper_valid: b.regime.upper_valid,
    };
    if m.sym_lo == m.sym_hi || m.scale == T::zero() {
        return Ok(out);
    }
    let w = (value - m.base) / m.scale;
    let slack_w = ulp_slack(value.abs() + m.base.abs(), 16) / m.scale.abs();
    out.symbol = m.link.invert(w);
    out.slack = slack_w * m.link.inverse_slope(w);
    Ok(out)
}
