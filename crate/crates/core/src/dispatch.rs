//! Tolerance-driven evaluation.
//!
//! A request is served by the cheapest method whose certified error meets the
//! requested relative tolerance: an elementary closed form, an asymptotic
//! enclosure, or the duplication algorithm.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use crate::asym::{self, CaseId, Enclosure, FuncKind};
use crate::error::{Error, Result};
use crate::reference::{self, Sym3Args, REFERENCE_REL_ERR};

/// Smallest tolerance a request may ask for.
pub const REL_TOL_FLOOR: f64 = 1e-14;
/// Largest tolerance a request may ask for.
pub const REL_TOL_CEILING: f64 = 1e-1;
/// Certified relative error of the elementary closed forms.
pub const CLOSED_FORM_REL_ERR: f64 = 1e-14;

/// Cases the dispatcher may select, per kind.
///
/// C2c and F1b are left out: they share their lower bound and estimate
/// with C2a and F1a and only differ in a cruder upper bound.
fn candidates(kind: FuncKind) -> &'static [CaseId] {
    use CaseId::*;
    match kind {
        FuncKind::RC => &[C1, C2a, C2b],
        FuncKind::RF => &[F1a, F1c, F1d, F2a],
        FuncKind::RD => &[D1, D2a, D2b, D2c, D3, D4],
        FuncKind::RJ => &[J1a, J1b, J2a, J2b, J3, J4a, J4b, J4c, J5, J6a, J6complete],
        FuncKind::RG => &[G1a, G1b, G2],
        FuncKind::K => &[F1e, F1f],
        FuncKind::E => &[G1c],
    }
}

/// A request for one integral value.
///
/// `args` are in the integral's own order; `K` and `E` take `[k']`.
/// A negative `y` for RC or `p` for RJ asks for the Cauchy principal value.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalRequest {
    pub kind: FuncKind,
    pub args: Vec<f64>,
    pub rel_tol: f64,
}

impl EvalRequest {
    pub fn new(kind: FuncKind, args: &[f64], rel_tol: f64) -> Self {
        Self { kind, args: args.to_vec(), rel_tol }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Asym(CaseId),
    Reference,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::ClosedForm => f.write_str("closed_form"),
            Method::Asym(c) => write!(f, "asym({c})"),
            Method::Reference => f.write_str("reference"),
        }
    }
}

/// One entry of a plan.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub method: Method,
    /// 0 closed form, 1 elementary asymptotic, 2 asymptotic with an
    /// auxiliary reference integral, 3 reference.
    pub cost_class: u8,
    /// Certified relative half-width of the method at these arguments.
    pub predicted_rel_halfwidth: f64,
    pub meets_tol: bool,
    pub enclosure: Option<Enclosure<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub value: f64,
    pub method: Method,
    pub guaranteed_rel_err: f64,
    pub enclosure: Option<Enclosure<f64>>,
    pub cost_class: u8,
}

fn check_tol(rel_tol: f64) -> Result<()> {
    if !(REL_TOL_FLOOR..=REL_TOL_CEILING).contains(&rel_tol) {
        return Err(Error::Tolerance {
            requested: rel_tol,
            floor: REL_TOL_FLOOR,
            ceiling: REL_TOL_CEILING,
        });
    }
    Ok(())
}

fn check_domain(kind: FuncKind, args: &[f64]) -> Result<()> {
    if args.len() != kind.arity() {
        return Err(Error::domain(
            "dispatch",
            format!("{kind} takes {} arguments, got {}", kind.arity(), args.len()),
        ));
    }
    if args.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("dispatch", "arguments must be finite"));
    }
    let nonneg = |v: &[f64]| v.iter().all(|&t| t >= 0.0);
    let ok = match kind {
        FuncKind::RC => args[0] >= 0.0 && args[1] != 0.0,
        FuncKind::RF => Sym3Args::new(args[0], args[1], args[2]).is_ok(),
        FuncKind::RD => nonneg(args) && args[2] > 0.0 && args[0] + args[1] > 0.0,
        FuncKind::RJ => Sym3Args::new(args[0], args[1], args[2]).is_ok() && args[3] != 0.0,
        FuncKind::RG => nonneg(args),
        FuncKind::K => args[0] > 0.0 && args[0] <= 1.0,
        FuncKind::E => (0.0..=1.0).contains(&args[0]),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::domain("dispatch", format!("arguments outside the domain of {kind}")))
    }
}

/// Equal-argument and elementary reductions.
fn closed_form(kind: FuncKind, a: &[f64]) -> Option<f64> {
    match kind {
        FuncKind::RC => Some(if a[1] < 0.0 {
            reference::rc_pv(a[0], -a[1]).ok()?
        } else {
            reference::rc(a[0], a[1]).ok()?
        }),
        FuncKind::RF => {
            let (x, y, z) = (a[0], a[1], a[2]);
            if x == y && y == z {
                Some(1.0 / x.sqrt())
            } else if y == z {
                reference::rc(x, y).ok()
            } else if x == z {
                reference::rc(y, x).ok()
            } else if x == y {
                reference::rc(z, x).ok()
            } else {
                None
            }
        }
        FuncKind::RD => (a[0] == a[1] && a[1] == a[2]).then(|| 1.0 / (a[0] * a[0].sqrt())),
        FuncKind::RJ => {
            (a[0] == a[1] && a[1] == a[2] && a[2] == a[3]).then(|| 1.0 / (a[0] * a[0].sqrt()))
        }
        FuncKind::RG => {
            let s = crate::reference::args_sorted(a[0], a[1], a[2]);
            if s[1] == 0.0 {
                Some(s[2].sqrt() / 2.0)
            } else if s[0] == s[1] && s[1] == s[2] {
                Some(s[0].sqrt())
            } else if s[0] == 0.0 && s[1] == s[2] {
                Some(FRAC_PI_4 * s[1].sqrt())
            } else if s[1] == s[2] || s[0] == s[1] {
                // 2 R_G(x, y, y) = y R_C(x, y) + sqrt(x)
                let (x, y) = if s[1] == s[2] { (s[0], s[1]) } else { (s[2], s[0]) };
                Some((y * reference::rc(x, y).ok()? + x.sqrt()) / 2.0)
            } else {
                None
            }
        }
        FuncKind::K => (a[0] == 1.0).then_some(FRAC_PI_2),
        FuncKind::E => {
            if a[0] == 0.0 {
                Some(1.0)
            } else if a[0] == 1.0 {
                Some(FRAC_PI_2)
            } else {
                None
            }
        }
    }
}

/// Arguments for `case`, arranged from the symmetric arguments of `kind`.
fn case_args(case: CaseId, a: &[f64]) -> Option<Vec<f64>> {
    use CaseId::*;
    let sorted3 = || crate::reference::args_sorted(a[0], a[1], a[2]);
    let v = match case.func() {
        FuncKind::RC | FuncKind::K | FuncKind::E => a.to_vec(),
        FuncKind::RF | FuncKind::RG => {
            let [s0, s1, s2] = sorted3();
            match case {
                F2a | G2 => vec![s1, s2, s0],
                G1b if s0 != 0.0 => return None,
                _ => vec![s0, s1, s2],
            }
        }
        FuncKind::RD => {
            let (lo, hi) = if a[0] <= a[1] { (a[0], a[1]) } else { (a[1], a[0]) };
            match case {
                D3 => vec![hi, lo, a[2]],
                _ => vec![lo, hi, a[2]],
            }
        }
        FuncKind::RJ => {
            let [s0, s1, s2] = sorted3();
            let p = a[3];
            match case {
                J1b | J4b | J6complete if s0 != 0.0 => return None,
                J1b | J4a | J4b | J4c => vec![s1, s2, s0, p],
                J6a | J6complete => vec![s2, s0, s1, p],
                _ => vec![s0, s1, s2, p],
            }
        }
    };
    Some(v)
}

fn reference_value(kind: FuncKind, a: &[f64]) -> Result<f64> {
    match kind {
        FuncKind::RC if a[1] < 0.0 => reference::rc_pv(a[0], -a[1]),
        FuncKind::RC => reference::rc(a[0], a[1]),
        FuncKind::RF => reference::rf(a[0], a[1], a[2]),
        FuncKind::RD => reference::rd(a[0], a[1], a[2]),
        FuncKind::RJ if a[3] < 0.0 => reference::rj_pv(a[0], a[1], a[2], a[3]),
        FuncKind::RJ => reference::rj(a[0], a[1], a[2], a[3]),
        FuncKind::RG => reference::rg(a[0], a[1], a[2]),
        FuncKind::K => reference::legendre_k_prime(a[0]),
        FuncKind::E => reference::legendre_e_prime(a[0]),
    }
}

fn asym_candidate(case: CaseId, a: &[f64], rel_tol: f64) -> Option<Candidate> {
    let args = case_args(case, a)?;
    let enc = asym::approx(case, &args).ok()?;
    if !enc.regime.upper_valid || !(enc.lo > 0.0) {
        return None;
    }
    let w = enc.rel_halfwidth();
    if !w.is_finite() {
        return None;
    }
    Some(Candidate {
        method: Method::Asym(case),
        cost_class: if case.needs_reference() { 2 } else { 1 },
        predicted_rel_halfwidth: w,
        meets_tol: w <= rel_tol,
        enclosure: Some(enc),
    })
}

/// All methods applicable to `req`, in the order [`evaluate`] tries them.
///
/// A closed form, when one applies, is the whole plan. Otherwise the
/// asymptotic cases whose regimes hold come sorted by cost class and then
/// by predicted width, followed by the reference algorithm.
pub fn plan(req: &EvalRequest) -> Result<Vec<Candidate>> {
    check_tol(req.rel_tol)?;
    check_domain(req.kind, &req.args)?;
    let a = &req.args[..];
    if closed_form(req.kind, a).is_some() {
        return Ok(vec![Candidate {
            method: Method::ClosedForm,
            cost_class: 0,
            predicted_rel_halfwidth: CLOSED_FORM_REL_ERR,
            meets_tol: CLOSED_FORM_REL_ERR <= req.rel_tol,
            enclosure: None,
        }]);
    }
    let principal = match req.kind {
        FuncKind::RJ => a[3] < 0.0,
        _ => false,
    };
    let mut out: Vec<Candidate> = if principal {
        Vec::new()
    } else {
        candidates(req.kind)
            .iter()
            .filter_map(|&c| asym_candidate(c, a, req.rel_tol))
            .collect()
    };
    out.sort_by(|u, v| {
        u.cost_class
            .cmp(&v.cost_class)
            .then(u.predicted_rel_halfwidth.total_cmp(&v.predicted_rel_halfwidth))
            .then_with(|| match (u.method, v.method) {
                (Method::Asym(x), Method::Asym(y)) => x.cmp(&y),
                _ => Ordering::Equal,
            })
    });
    out.push(Candidate {
        method: Method::Reference,
        cost_class: 3,
        predicted_rel_halfwidth: REFERENCE_REL_ERR,
        meets_tol: REFERENCE_REL_ERR <= req.rel_tol,
        enclosure: None,
    });
    Ok(out)
}

/// Value of the requested integral within `req.rel_tol`.
pub fn evaluate(req: &EvalRequest) -> Result<EvalReport> {
    let steps = plan(req)?;
    let a = &req.args[..];
    let pick = steps
        .iter()
        .find(|c| c.meets_tol)
        .unwrap_or_else(|| steps.last().expect("plan is never empty"));
    let value = match pick.method {
        Method::ClosedForm => closed_form(req.kind, a).expect("closed form was planned"),
        Method::Asym(_) => pick.enclosure.as_ref().expect("asym candidate has an enclosure").estimate,
        Method::Reference => reference_value(req.kind, a)?,
    };
    Ok(EvalReport {
        value,
        method: pick.method,
        guaranteed_rel_err: pick.predicted_rel_halfwidth,
        enclosure: pick.enclosure,
        cost_class: pick.cost_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(kind: FuncKind, args: &[f64], tol: f64) -> EvalReport {
        evaluate(&EvalRequest::new(kind, args, tol)).unwrap()
    }

    fn methods(kind: FuncKind, args: &[f64], tol: f64) -> Vec<Method> {
        plan(&EvalRequest::new(kind, args, tol))
            .unwrap()
            .into_iter()
            .map(|c| c.method)
            .collect()
    }

    #[test]
    fn equal_arguments_are_closed_form() {
        let r = eval(FuncKind::RF, &[2.0, 2.0, 2.0], 1e-12);
        assert_eq!(r.method, Method::ClosedForm);
        assert!(crate::scalar::within_ulps(r.value, 0.5f64.sqrt(), 2));
        assert_eq!(methods(FuncKind::RC, &[0.0, 5.0], 1e-3), vec![Method::ClosedForm]);
        let g = eval(FuncKind::RG, &[1.0, 1.0, 0.0], 1e-12);
        assert_eq!(g.method, Method::ClosedForm);
        assert!((g.value - FRAC_PI_4).abs() < 1e-15);
        let g = eval(FuncKind::RG, &[0.3, 2.0, 2.0], 1e-12);
        assert!((g.value - reference::rg(0.3, 2.0, 2.0).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn small_ratio_takes_asymptotic_path() {
        let r = eval(FuncKind::RF, &[1e-9, 2e-9, 1.0], 1e-6);
        assert!(matches!(r.method, Method::Asym(CaseId::F1a | CaseId::F1d)));
        let e = r.enclosure.unwrap();
        assert!(e.rel_halfwidth() <= 1e-6);
        let v = reference::rf(1e-9, 2e-9, 1.0).unwrap();
        assert!(e.contains(v) && (r.value - v).abs() <= 1e-6 * v);
        let m = methods(FuncKind::RF, &[1e-9, 2e-9, 1.0], 1e-6);
        assert_eq!(
            m[..3],
            [Method::Asym(CaseId::F1d), Method::Asym(CaseId::F1c), Method::Asym(CaseId::F1a)]
        );
        assert_eq!(m.last(), Some(&Method::Reference));
    }

    #[test]
    fn cheaper_class_first() {
        let m = methods(FuncKind::RD, &[1.0, 1.0, 1e-8], 1e-3);
        let pos = |c| m.iter().position(|&x| x == Method::Asym(c)).unwrap();
        assert!(pos(CaseId::D2a) < pos(CaseId::D2b));
        let r = eval(FuncKind::RD, &[1.0, 1.0, 1e-8], 1e-3);
        assert_eq!(r.method, Method::Asym(CaseId::D2a));
        assert_eq!(r.cost_class, 1);
    }

    #[test]
    fn no_regime_falls_through() {
        let r = eval(FuncKind::RJ, &[1.0, 2.0, 3.0, 2.5], 1e-12);
        assert_eq!(r.method, Method::Reference);
        assert!((r.value - reference::rj(1.0, 2.0, 3.0, 2.5).unwrap()).abs() < 1e-15);
        let r = eval(FuncKind::RJ, &[1.0, 2.0, 3.0, -0.5], 1e-6);
        assert_eq!(r.method, Method::Reference);
        assert!((r.value - reference::rj_pv(1.0, 2.0, 3.0, -0.5).unwrap()).abs() < 1e-15);
        // R_C(1, -1) = ln(1 + sqrt 2) / sqrt 2
        let r = eval(FuncKind::RC, &[1.0, -1.0], 1e-9);
        assert_eq!(r.method, Method::ClosedForm);
        assert!((r.value - 2f64.sqrt().ln_1p() / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn tolerance_and_domain_errors() {
        let req = EvalRequest::new(FuncKind::RF, &[1.0, 2.0, 3.0], 1e-15);
        assert!(matches!(evaluate(&req), Err(Error::Tolerance { .. })));
        let req = EvalRequest::new(FuncKind::RF, &[0.0, 0.0, 3.0], 1e-6);
        assert!(matches!(evaluate(&req), Err(Error::Domain { .. })));
        let req = EvalRequest::new(FuncKind::RD, &[1.0, 2.0], 1e-6);
        assert!(matches!(evaluate(&req), Err(Error::Domain { .. })));
    }

    #[test]
    fn slot_mapping_reaches_permuted_regimes() {
        let r = eval(FuncKind::RJ, &[1e-10, 2.0, 1.0, 3.0], 1e-6);
        assert!(matches!(r.method, Method::Asym(CaseId::J5)), "{:?}", r.method);
        let r = eval(FuncKind::RD, &[1e9, 1.0, 2.0], 1e-6);
        assert_eq!(r.method, Method::Asym(CaseId::D3));
        let r = eval(FuncKind::RG, &[3.0, 1e-10, 2.0], 1e-6);
        assert_eq!(r.method, Method::Asym(CaseId::G2));
    }

    #[test]
    fn legendre_kinds() {
        let r = eval(FuncKind::K, &[1e-5], 1e-6);
        assert!(matches!(r.method, Method::Asym(_)));
        let k = reference::legendre_k_prime(1e-5).unwrap();
        assert!((r.value - k).abs() <= 1e-6 * k);
        assert_eq!(eval(FuncKind::E, &[0.0], 1e-9).method, Method::ClosedForm);
    }

    #[test]
    fn deterministic() {
        let req = EvalRequest::new(FuncKind::RJ, &[1.0, 2.0, 1e-9, 3e-9], 1e-6);
        assert_eq!(evaluate(&req).unwrap(), evaluate(&req).unwrap());
    }
}
