use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{json, Value};
use symell::asym::{approx, theta_recover, CaseId, FuncKind};
use symell::bounds::{bracket, theta_of, Check, IneqId};
use symell::dispatch::{evaluate, EvalRequest};
use symell::harness::report::write_csv;
use symell::harness::{
    case_reference, run_bounds, run_containment, run_identities, run_order_fit, Campaign, CampaignReport,
};
use symell::reference::{legendre_e_prime, legendre_k_prime};
use symell::Error;

use crate::output::{canonical, plain};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const DOMAIN: i32 = 2;
    pub const TOLERANCE: i32 = 3;
    pub const REGIME: i32 = 4;
    pub const SOFTWARE: i32 = 70;
    pub const USAGE: i32 = 64;
}

/// A failure to report on stderr, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: exit::USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain { .. } => exit::DOMAIN,
            Error::Tolerance { .. } => exit::TOLERANCE,
            Error::Regime { .. } => exit::REGIME,
            Error::Campaign(_) => exit::USAGE,
            Error::Convergence(_) => exit::SOFTWARE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: exit::SOFTWARE,
            message: e.to_string(),
        }
    }
}

pub type Outcome = Result<i32, Failure>;

fn arity_check(what: &str, expected: usize, got: usize) -> Result<(), Failure> {
    if expected != got {
        return Err(Failure::usage(format!("{what} takes {expected} arguments, got {got}")));
    }
    Ok(())
}

fn emit(out: &mut impl Write, line: &str) -> Result<(), Failure> {
    writeln!(out, "{line}")?;
    Ok(())
}

fn enclosure_json(e: &symell::Enclosure64) -> Value {
    json!({
        "estimate": e.estimate,
        "lo": e.lo,
        "hi": e.hi,
        "ratio": e.regime.ratio,
        "upper_valid": e.regime.upper_valid,
    })
}

pub fn eval(kind: FuncKind, args: &[f64], rel_tol: f64, as_json: bool, out: &mut impl Write) -> Outcome {
    arity_check(kind.name(), kind.arity(), args.len())?;
    let rep = evaluate(&EvalRequest::new(kind, args, rel_tol))?;
    if as_json {
        let v = json!({
            "kind": kind.name(),
            "args": args,
            "rel_tol": rel_tol,
            "value": rep.value,
            "method": rep.method.to_string(),
            "guaranteed_rel_err": rep.guaranteed_rel_err,
            "cost_class": rep.cost_class,
            "enclosure": rep.enclosure.as_ref().map(enclosure_json),
        });
        emit(out, &canonical(&v))?;
    } else {
        emit(
            out,
            &format!("{} {} {}", plain(rep.value), rep.method, plain(rep.guaranteed_rel_err)),
        )?;
    }
    Ok(exit::OK)
}

pub fn asym(case: CaseId, args: &[f64], as_json: bool, out: &mut impl Write) -> Outcome {
    arity_check(case.name(), case.func().arity(), args.len())?;
    let e = approx(case, args)?;
    if !e.regime.upper_valid {
        return Err(Failure {
            code: exit::REGIME,
            message: format!("{case} requires 5a < z for a certified upper endpoint (lower bound {})", plain(e.lo)),
        });
    }
    let reference = case_reference(case, args)?;
    let t = theta_recover(case, args, reference)?;
    if as_json {
        let mut v = enclosure_json(&e);
        let m = v.as_object_mut().unwrap();
        m.insert("case".into(), json!(case.name()));
        m.insert("args".into(), json!(args));
        m.insert("reference".into(), json!(reference));
        m.insert("contains_reference".into(), json!(e.contains(reference)));
        m.insert(
            "symbol".into(),
            json!({"value": t.symbol, "lo": t.lo, "hi": t.hi, "inside": t.inside()}),
        );
        emit(out, &canonical(&v))?;
    } else {
        for (k, v) in [
            ("estimate", plain(e.estimate)),
            ("lo", plain(e.lo)),
            ("hi", plain(e.hi)),
            ("reference", plain(reference)),
            ("contains_reference", e.contains(reference).to_string()),
            ("symbol", plain(t.symbol)),
            ("symbol_lo", plain(t.lo)),
            ("symbol_hi", plain(t.hi)),
            ("symbol_inside", t.inside().to_string()),
            ("ratio", plain(e.regime.ratio)),
            ("upper_valid", e.regime.upper_valid.to_string()),
        ] {
            emit(out, &format!("{k} {v}"))?;
        }
    }
    Ok(exit::OK)
}

pub fn bounds_check(id: IneqId, t: f64, args: &[f64], as_json: bool, out: &mut impl Write) -> Outcome {
    arity_check(id.name(), id.arity(), args.len())?;
    let b = bracket(id, t, args)?;
    let (sl, sh) = id.strictness();
    let status = match b.check(sl, sh) {
        Check::Holds => "holds",
        Check::InBand => "in_band",
        Check::Violated => "violated",
    };
    let theta = if id.is_theta_form() { Some(theta_of(id, t, args)?) } else { None };
    if as_json {
        let v = json!({
            "id": id.name(),
            "t": t,
            "args": args,
            "lo": b.lo,
            "mid": b.mid,
            "hi": b.hi,
            "theta": theta,
            "status": status,
        });
        emit(out, &canonical(&v))?;
    } else {
        emit(out, &format!("{} {} {} {status}", plain(b.lo), plain(b.mid), plain(b.hi)))?;
    }
    Ok(if status == "violated" { exit::VIOLATION } else { exit::OK })
}

/// What `--cases` selected.
#[derive(Debug, Default, PartialEq)]
pub struct Selection {
    pub cases: Vec<CaseId>,
    pub inequalities: Vec<IneqId>,
    pub identities: bool,
}

fn push_unique<T: PartialEq + Copy>(v: &mut Vec<T>, items: &[T]) {
    for &i in items {
        if !v.contains(&i) {
            v.push(i);
        }
    }
}

fn span<T: Copy + PartialEq>(all: &[T], a: T, b: T) -> Vec<T> {
    let i = all.iter().position(|x| *x == a).unwrap();
    let j = all.iter().position(|x| *x == b).unwrap();
    all[i.min(j)..=i.max(j)].to_vec()
}

/// Parses `all`, `appendix`, `identities`, tags, and `first:last` ranges, comma separated.
pub fn parse_cases(text: &str) -> Result<Selection, Failure> {
    let mut sel = Selection::default();
    for tok in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match tok.to_ascii_lowercase().as_str() {
            "all" => push_unique(&mut sel.cases, CaseId::ALL),
            "appendix" => push_unique(&mut sel.inequalities, &IneqId::ALL),
            "identities" => sel.identities = true,
            _ => {
                let (a, b) = tok.split_once(':').unwrap_or((tok, tok));
                if let (Ok(x), Ok(y)) = (a.parse::<CaseId>(), b.parse::<CaseId>()) {
                    push_unique(&mut sel.cases, &span(CaseId::ALL, x, y));
                } else if let (Ok(x), Ok(y)) = (a.parse::<IneqId>(), b.parse::<IneqId>()) {
                    push_unique(&mut sel.inequalities, &span(&IneqId::ALL, x, y));
                } else {
                    return Err(Failure::usage(format!("unknown case or range {tok:?}")));
                }
            }
        }
    }
    if sel == Selection::default() {
        return Err(Failure::usage("--cases selected nothing"));
    }
    Ok(sel)
}

/// Parses `hi:lo` (one ratio per decade) or a comma list.
pub fn parse_ratios(text: &str) -> Result<Vec<f64>, Failure> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Failure::usage(format!("bad ratio {s:?}")))
    };
    let ratios = if let Some((a, b)) = text.split_once(':') {
        let (a, b) = (num(a)?, num(b)?);
        if !(a > 0.0 && b > 0.0) {
            return Err(Failure::usage("ratio range ends must be positive"));
        }
        let (hi, lo) = (a.max(b), a.min(b));
        let decades = (hi / lo).log10().round() as i32;
        (0..=decades).map(|i| hi / 10f64.powi(i)).collect()
    } else {
        text.split(',').filter(|s| !s.trim().is_empty()).map(num).collect::<Result<_, _>>()?
    };
    Ok(ratios)
}

/// Ratios used for the order fit: those at or below 1e-3.
const ORDER_FIT_MAX_RATIO: f64 = 1e-3;

fn case_report(case: CaseId, ratios: &[f64], samples: usize, seed: u64) -> Result<CampaignReport, Failure> {
    let mut rep = run_containment(&Campaign::new(case, ratios, samples, seed))?;
    let fit: Vec<f64> = ratios
        .iter()
        .copied()
        .filter(|r| *r <= ORDER_FIT_MAX_RATIO * (1.0 + 1e-9))
        .collect();
    if let Ok(f) = run_order_fit(&Campaign::new(case, &fit, samples, seed)) {
        rep.slope = f.slope;
        rep.expected_order = f.expected_order;
        rep.slope_ok = f.slope_ok;
        rep.violations += f.violations;
        rep.offending.extend(f.offending);
    }
    Ok(rep)
}

fn summary(r: &CampaignReport) -> String {
    let mut s = format!("{} violations {}", r.subject, r.violations);
    if let (Some(slope), Some(exp)) = (r.slope, r.expected_order) {
        s += &format!(" slope {slope:.3} expected {}", plain(exp));
    }
    s += if r.passed() { " ok" } else { " FAIL" };
    s
}

pub fn verify(
    sel: &Selection,
    ratios: &[f64],
    samples: usize,
    seed: u64,
    out_path: Option<&Path>,
    out: &mut impl Write,
) -> Outcome {
    let mut reports = Vec::new();
    for &c in &sel.cases {
        reports.push(case_report(c, ratios, samples, seed)?);
    }
    if !sel.inequalities.is_empty() {
        reports.push(run_bounds(&sel.inequalities, seed, samples)?);
    }
    if sel.identities {
        reports.push(run_identities(seed, samples)?);
    }
    for r in &reports {
        emit(out, &summary(r))?;
        for c in &r.checks {
            emit(out, &format!("  {} {}/{} failed", c.name, c.failures, c.samples))?;
        }
    }
    if let Some(p) = out_path {
        let f = BufWriter::new(File::create(p)?);
        if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            write_csv(&reports, f)?;
        } else {
            let mut f = f;
            writeln!(f, "{}", canonical(&serde_json::to_value(&reports).unwrap()))?;
        }
    }
    Ok(if reports.iter().all(CampaignReport::passed) { exit::OK } else { exit::VIOLATION })
}

pub fn identities(samples: usize, seed: u64, as_json: bool, out: &mut impl Write) -> Outcome {
    let rep = run_identities(seed, samples)?;
    if as_json {
        emit(out, &canonical(&serde_json::to_value(&rep).unwrap()))?;
    } else {
        for c in &rep.checks {
            emit(
                out,
                &format!("{} {} {} {} {}", c.name, c.samples, c.failures, plain(c.max_err), plain(c.tol)),
            )?;
        }
    }
    Ok(if rep.passed() { exit::OK } else { exit::VIOLATION })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Legendre {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "E", alias = "e")]
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Tsv,
    Json,
}

pub fn parse_grid(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("bad grid value {s:?}")))
        })
        .collect()
}

pub fn table(function: Legendre, grid: &[f64], format: TableFormat, out: &mut impl Write) -> Outcome {
    if let Some(k) = grid.iter().find(|k| !(**k > 0.0 && **k < 1.0)) {
        return Err(Failure {
            code: exit::DOMAIN,
            message: format!("grid value {k} outside (0, 1)"),
        });
    }
    let cases: &[CaseId] = match function {
        Legendre::K => &[CaseId::F1e, CaseId::F1f],
        Legendre::E => &[CaseId::G1c],
    };
    let mut header = vec!["kprime".to_string(), "reference".to_string()];
    for c in cases {
        for col in ["lo", "hi", "theta", "contains"] {
            header.push(format!("{c}_{col}"));
        }
    }
    let mut rows: Vec<Vec<Value>> = Vec::new();
    for &kp in grid {
        let reference = match function {
            Legendre::K => legendre_k_prime(kp)?,
            Legendre::E => legendre_e_prime(kp)?,
        };
        let mut row = vec![json!(kp), json!(reference)];
        for &c in cases {
            let e = approx(c, &[kp])?;
            let t = theta_recover(c, &[kp], reference)?;
            row.extend([json!(e.lo), json!(e.hi), json!(t.symbol), json!(e.contains(reference))]);
        }
        rows.push(row);
    }
    match format {
        TableFormat::Json => {
            let objs: Vec<Value> = rows
                .into_iter()
                .map(|r| Value::Object(header.iter().cloned().zip(r).collect()))
                .collect();
            emit(out, &canonical(&Value::Array(objs)))?;
        }
        TableFormat::Csv | TableFormat::Tsv => {
            let sep = if format == TableFormat::Csv { "," } else { "\t" };
            emit(out, &header.join(sep))?;
            for r in rows {
                let cells: Vec<String> = r
                    .iter()
                    .map(|v| match v {
                        Value::Number(n) => plain(n.as_f64().unwrap()),
                        other => other.to_string(),
                    })
                    .collect();
                emit(out, &cells.join(sep))?;
            }
        }
    }
    Ok(exit::OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_selection() {
        let s = parse_cases("A1:A10").unwrap();
        assert_eq!(s.inequalities.len(), 11);
        assert!(s.cases.is_empty());
        let s = parse_cases("F1a:F1d,C1,identities").unwrap();
        assert_eq!(s.cases, vec![CaseId::F1a, CaseId::F1b, CaseId::F1c, CaseId::F1d, CaseId::C1]);
        assert!(s.identities);
        assert_eq!(parse_cases("all").unwrap().cases.len(), CaseId::ALL.len());
        assert!(parse_cases("Q7").is_err());
        assert!(parse_cases("").is_err());
    }

    #[test]
    fn ratio_ranges() {
        let r = parse_ratios("1e-2:1e-7").unwrap();
        assert_eq!(r.len(), 6);
        assert!((r[5] - 1e-7).abs() < 1e-22);
        assert_eq!(parse_ratios("0.1,0.01").unwrap(), vec![0.1, 0.01]);
        assert!(parse_ratios("x:1").is_err());
    }
}
