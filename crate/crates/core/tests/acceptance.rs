//! Acceptance suite. One test per criterion; each prints a `criterion N: PASS|FAIL` line.
//!
//! Run with `cargo test -p symell --test acceptance -- --nocapture` to see the lines.

use std::f64::consts::FRAC_PI_4;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::Rng;
use symell::asym::approx_k;
use symell::bounds::{bracket, IneqId};
use symell::harness::sampling::{rng, sample_case, sample_positive};
use symell::harness::{
    case_oracle, case_reference, run_bounds, run_containment, run_identities, run_order_fit, Campaign,
    CampaignReport,
};
use symell::oracle::{oracle, oracle_rc_pv, oracle_rj_pv, Kind, Quad};
use symell::reference::{legendre_k_prime, rd};
use symell::scalar::{ulp_slack, within_ulps};
use symell::{approx, evaluate, rc, rf, rg, theta_recover, CaseId, EvalRequest, FuncKind, Method};

const SEED: u64 = 20240611;

const ORACLE_AGREEMENT: f64 = 1e-9;
const ORACLE_TUPLES: usize = 1000;
const ORACLE_BUDGET: Duration = Duration::from_secs(120);

const CLOSED_FORM_TOL: f64 = 1e-13;
const EQUAL_ARGS_ULPS: u32 = 2;
const EQUAL_ARGS_SAMPLES: usize = 10_000;

const CONTAINMENT_RATIOS: [f64; 6] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7];
const CONTAINMENT_SAMPLES: usize = 500;
const CONTAINMENT_BUDGET: Duration = Duration::from_secs(600);

const ATTAINMENT_SAMPLES: usize = 500;

const SHARPENING_RATIOS: [f64; 5] = [1e-3, 1e-4, 1e-5, 1e-6, 1e-7];
const SHARPENING_SAMPLES: usize = 500;

const ORDER_RATIOS: [f64; 5] = [1e-3, 1e-4, 1e-5, 1e-6, 1e-7];
const ORDER_SAMPLES: usize = 200;

const IDENTITY_TUPLES: usize = 10_000;
const INEQUALITY_TUPLES: usize = 100_000;

const DISPATCH_REQUESTS: usize = 10_000;
const DISPATCH_TOLS: [f64; 3] = [1e-3, 1e-6, 1e-9];
const FAST_PATH_TOL: f64 = 1e-6;
const FAST_PATH_PER_CASE: usize = 100;
/// Quadrature band, in ulps, beyond its own error estimate.
const QUAD_BAND_ULPS: u32 = 16;

fn verdict(n: u32, ok: bool, detail: impl std::fmt::Display) {
    println!("criterion {n}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn log_uniform(r: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    10f64.powf(r.gen_range(lo..hi))
}

fn reference_for(kind: Kind, a: &[f64]) -> f64 {
    match kind {
        Kind::RC => rc(a[0], a[1]),
        Kind::RF => rf(a[0], a[1], a[2]),
        Kind::RD => rd(a[0], a[1], a[2]),
        Kind::RJ => symell::rj(a[0], a[1], a[2], a[3]),
        Kind::RG => rg(a[0], a[1], a[2]),
        Kind::Rm1 => unreachable!(),
    }
    .unwrap()
}

#[test]
fn c01_dual_oracle_agreement() {
    let start = Instant::now();
    let mut worst = Vec::new();
    let mut failures = 0;
    for (i, kind) in [Kind::RC, Kind::RF, Kind::RD, Kind::RJ, Kind::RG].into_iter().enumerate() {
        let mut r = rng(SEED, 100 + i as u64);
        let mut max_err = 0f64;
        for _ in 0..ORACLE_TUPLES {
            let a = sample_positive(kind.arity(), -3.0, 3.0, &mut r);
            let q = oracle(kind, &a).unwrap();
            let err = (reference_for(kind, &a) - q.value).abs() / q.value.abs();
            if !(err <= ORACLE_AGREEMENT) {
                failures += 1;
            }
            max_err = max_err.max(err);
        }
        worst.push(format!("{kind:?} {max_err:.1e}"));
    }
    let t = start.elapsed();
    verdict(
        1,
        failures == 0 && t < ORACLE_BUDGET,
        format!("{failures} disagreements; max rel err [{}]; {:.1}s", worst.join(", "), t.as_secs_f64()),
    );
}

#[test]
fn c02_closed_form_exactness() {
    let data = include_str!("data/rc_closed_form.csv");
    let (mut n, mut bad, mut max_err) = (0, 0, 0f64);
    for line in data.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let err = (rc(f[0], f[1]).unwrap() - f[2]).abs() / f[2];
        max_err = max_err.max(err);
        bad += (err > CLOSED_FORM_TOL) as usize;
        n += 1;
    }
    let mut r = rng(SEED, 200);
    let mut bad_equal = 0;
    for _ in 0..EQUAL_ARGS_SAMPLES {
        let x = log_uniform(&mut r, -150.0, 150.0);
        if !within_ulps(rf(x, x, x).unwrap(), x.powf(-0.5), EQUAL_ARGS_ULPS) {
            bad_equal += 1;
        }
    }
    verdict(
        2,
        n == 10_000 && bad == 0 && bad_equal == 0,
        format!("rc: {bad}/{n} beyond {CLOSED_FORM_TOL:e} (max {max_err:.1e}); rf(x,x,x): {bad_equal}/{EQUAL_ARGS_SAMPLES} beyond {EQUAL_ARGS_ULPS} ulps"),
    );
}

fn containment() -> &'static (Vec<CampaignReport>, Duration) {
    static CELL: OnceLock<(Vec<CampaignReport>, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let reports = CaseId::ALL
            .iter()
            .map(|&c| run_containment(&Campaign::new(c, &CONTAINMENT_RATIOS, CONTAINMENT_SAMPLES, SEED)).unwrap())
            .collect();
        (reports, start.elapsed())
    })
}

#[test]
fn c03_enclosure_containment() {
    let (reports, t) = containment();
    let mut bad = Vec::new();
    for rep in reports {
        let quad = rep.offending.iter().filter(|v| v.check != "theta").count();
        let evaluated: usize = rep.rows.iter().map(|r| r.evaluated).sum();
        if quad > 0 || rep.quadrature_checks != evaluated || evaluated == 0 {
            bad.push(format!("{} ({quad} violations, {evaluated} evaluated)", rep.subject));
        }
    }
    let checked: usize = reports.iter().map(|r| r.quadrature_checks).sum();
    verdict(
        3,
        bad.is_empty() && *t < CONTAINMENT_BUDGET,
        format!("{checked} samples over {} cases; failing {bad:?}; {:.1}s", reports.len(), t.as_secs_f64()),
    );
}

/// Samples of `case` with `args[i] = args[j]`.
fn attained(case: CaseId, tie: (usize, usize), zero_small: bool, seed_stream: u64) -> (usize, usize) {
    let mut r = rng(SEED, seed_stream);
    let mut ok = 0;
    for i in 0..ATTAINMENT_SAMPLES {
        let ratio = CONTAINMENT_RATIOS[i % CONTAINMENT_RATIOS.len()];
        let mut a = sample_case(case, ratio, zero_small, &mut r);
        a[tie.0] = a[tie.1];
        let v = case_reference(case, &a).unwrap();
        let t = theta_recover(case, &a, v).unwrap();
        let e = approx(case, &a).unwrap();
        let closed = if t.symbol == t.lo { t.closed_lo } else { t.closed_hi };
        if t.inside() && t.at_endpoint() && closed && e.contains(v) {
            ok += 1;
        }
    }
    (ok, ATTAINMENT_SAMPLES)
}

#[test]
fn c04_bracket_realization() {
    let (reports, _) = containment();
    let mut outside = Vec::new();
    let (mut checked, mut inside) = (0, 0);
    for rep in reports {
        let th = rep.theta.unwrap();
        checked += th.checked;
        inside += th.inside;
        if th.inside != th.checked || rep.offending.iter().any(|v| v.check == "theta") {
            outside.push(rep.subject.clone());
        }
    }
    // C1 at x = 0: the error term vanishes, symbol at its endpoint
    let c1 = attained(CaseId::C1, (0, 0), true, 400);
    let j1b = attained(CaseId::J1b, (1, 0), false, 401);
    let j4a = attained(CaseId::J4a, (1, 0), false, 402);
    let mut r = rng(SEED, 403);
    let mut eq_ok = 0;
    for _ in 0..ATTAINMENT_SAMPLES {
        let v = sample_positive(2, -6.0, 6.0, &mut r);
        let (t, x) = (v[0], v[1]);
        eq_ok += [IneqId::A5, IneqId::A6a]
            .iter()
            .all(|&id| {
                let b = bracket(id, t, &[x, x]).unwrap();
                let band = |u: f64, w: f64| (u - w).abs() <= ulp_slack(u.abs().max(w.abs()), 4);
                band(b.lo, b.mid) && band(b.mid, b.hi)
            }) as usize;
    }
    let ok = outside.is_empty()
        && checked == inside
        && [c1, j1b, j4a].iter().all(|(a, n)| a == n)
        && eq_ok == ATTAINMENT_SAMPLES;
    verdict(
        4,
        ok,
        format!(
            "theta inside {inside}/{checked} (failing {outside:?}); endpoint attained: C1 x=0 {}/{}, J1b {}/{}, J4a {}/{}, A5+A6a {eq_ok}/{ATTAINMENT_SAMPLES}",
            c1.0, c1.1, j1b.0, j1b.1, j4a.0, j4a.1
        ),
    );
}

#[test]
fn c05_sharpening() {
    let pairs = [
        (CaseId::F1d, CaseId::F1a),
        (CaseId::C2b, CaseId::C2a),
        (CaseId::D2b, CaseId::D2a),
        (CaseId::D2c, CaseId::D2b),
        (CaseId::J2b, CaseId::J2a),
        (CaseId::F1f, CaseId::F1e),
    ];
    let mut lines = Vec::new();
    let mut all = true;
    for (k, (sharp, base)) in pairs.into_iter().enumerate() {
        let mut r = rng(SEED, 500 + k as u64);
        let (mut ok, mut n) = (0, 0);
        for &ratio in &SHARPENING_RATIOS {
            for _ in 0..SHARPENING_SAMPLES {
                let a = sample_case(base, ratio, false, &mut r);
                let (s, b) = (approx(sharp, &a).unwrap(), approx(base, &a).unwrap());
                n += 1;
                ok += (s.width() < b.width()) as usize;
            }
        }
        all &= ok == n;
        lines.push(format!("{sharp}<{base} {ok}/{n}"));
    }
    verdict(5, all, lines.join(", "));
}

#[test]
fn c06_order_fits() {
    let mut off = Vec::new();
    let mut worst = 0f64;
    for &c in CaseId::ALL {
        let rep = run_order_fit(&Campaign::new(c, &ORDER_RATIOS, ORDER_SAMPLES, SEED)).unwrap();
        let (s, e) = (rep.slope.unwrap(), rep.expected_order.unwrap());
        worst = worst.max((s - e).abs());
        if rep.slope_ok != Some(true) {
            off.push(format!("{c} slope {s:.3} expected {e}"));
        }
    }
    verdict(
        6,
        off.is_empty(),
        format!("{} cases, worst |slope - expected| {worst:.3}; off {off:?}", CaseId::ALL.len()),
    );
}

#[test]
fn c07_identity_suite() {
    let rep = run_identities(SEED, IDENTITY_TUPLES).unwrap();
    let rows: Vec<String> = rep
        .checks
        .iter()
        .map(|c| format!("{} {}/{} (max {:.1e})", c.name, c.samples - c.failures, c.samples, c.max_err))
        .collect();
    let enough = rep.checks.iter().all(|c| c.samples >= IDENTITY_TUPLES);
    verdict(7, rep.violations == 0 && enough, rows.join(", "));
}

#[test]
fn c08_appendix_fuzz() {
    let rep = run_bounds(&IneqId::ALL, SEED, INEQUALITY_TUPLES).unwrap();
    let rows: Vec<String> = rep
        .checks
        .iter()
        .map(|c| format!("{} {}/{}", c.name, c.failures, c.samples))
        .collect();
    let sized = IneqId::ALL
        .iter()
        .all(|id| rep.checks.iter().any(|c| c.name == id.name() && c.samples == INEQUALITY_TUPLES));
    let mono = rep.checks.iter().any(|c| c.name == "A3_A4_monotone" && c.failures == 0);
    verdict(8, rep.violations == 0 && sized && mono, format!("failures: {}", rows.join(", ")));
}

fn func_oracle(kind: FuncKind, a: &[f64]) -> Quad<f64> {
    match kind {
        FuncKind::RC if a[1] < 0.0 => oracle_rc_pv(a[0], -a[1]).unwrap(),
        FuncKind::RJ if a[3] < 0.0 => oracle_rj_pv(a[0], a[1], a[2], -a[3]).unwrap(),
        FuncKind::K => case_oracle(CaseId::F1e, a).unwrap(),
        FuncKind::E => case_oracle(CaseId::G1c, a).unwrap(),
        _ => {
            let case = CaseId::ALL.iter().find(|c| c.func() == kind).unwrap();
            case_oracle(*case, a).unwrap()
        }
    }
}

const KINDS: [FuncKind; 7] = [
    FuncKind::RC,
    FuncKind::RF,
    FuncKind::RD,
    FuncKind::RJ,
    FuncKind::RG,
    FuncKind::K,
    FuncKind::E,
];

fn fuzz_args(kind: FuncKind, r: &mut impl Rng) -> Vec<f64> {
    let cases: Vec<CaseId> = CaseId::ALL.iter().copied().filter(|c| c.func() == kind).collect();
    let mut chacha = rng(r.gen(), 0);
    match r.gen_range(0..10) {
        // regime-shaped
        0..=4 => {
            let c = cases[r.gen_range(0..cases.len())];
            sample_case(c, log_uniform(r, -10.0, -1.0), false, &mut chacha)
        }
        // principal values
        5 if kind == FuncKind::RC => vec![log_uniform(r, -3.0, 3.0), -log_uniform(r, -3.0, 3.0)],
        5 if kind == FuncKind::RJ => {
            let mut a = sample_positive(3, -3.0, 3.0, &mut chacha);
            a.push(-log_uniform(r, -3.0, 3.0));
            a
        }
        _ => match kind {
            FuncKind::K | FuncKind::E => vec![log_uniform(r, -6.0, 0.0)],
            _ => sample_positive(kind.arity(), -3.0, 3.0, &mut chacha),
        },
    }
}

#[test]
fn c09_dispatcher_soundness() {
    let mut r = rng(SEED, 900);
    let reqs: Vec<EvalRequest> = (0..DISPATCH_REQUESTS)
        .map(|i| {
            let kind = KINDS[i % KINDS.len()];
            EvalRequest::new(kind, &fuzz_args(kind, &mut r), DISPATCH_TOLS[i % DISPATCH_TOLS.len()])
        })
        .collect();
    let mut bad = Vec::new();
    let mut by_method = [0usize; 3];
    for q in &reqs {
        let rep = evaluate(q).unwrap();
        by_method[match rep.method {
            Method::ClosedForm => 0,
            Method::Asym(_) => 1,
            Method::Reference => 2,
        }] += 1;
        let o = func_oracle(q.kind, &q.args);
        let band = o.error + ulp_slack(o.value, QUAD_BAND_ULPS);
        let achieved = ((rep.value - o.value).abs() - band).max(0.0) / o.value.abs();
        if !(achieved <= q.rel_tol) || rep.guaranteed_rel_err > q.rel_tol {
            bad.push(format!("{:?} {:?} tol {:e}: {achieved:e} via {}", q.kind, q.args, q.rel_tol, rep.method));
        }
    }
    let mut slow = Vec::new();
    let mut fast_n = 0;
    for (k, &c) in CaseId::ALL.iter().enumerate() {
        let mut cr = rng(SEED, 950 + k as u64);
        for _ in 0..FAST_PATH_PER_CASE {
            let ratio = log_uniform(&mut cr, -12.0, -8.0);
            let a = sample_case(c, ratio, false, &mut cr);
            let rep = evaluate(&EvalRequest::new(c.func(), &a, FAST_PATH_TOL)).unwrap();
            fast_n += 1;
            if rep.method == Method::Reference {
                slow.push(format!("{c} {a:?}"));
            }
        }
    }
    verdict(
        9,
        bad.is_empty() && slow.is_empty(),
        format!(
            "{} of {DISPATCH_REQUESTS} over tolerance (closed {}, asym {}, reference {}); fast path {}/{fast_n} at ratio <= 1e-8; first {:?} {:?}",
            bad.len(),
            by_method[0],
            by_method[1],
            by_method[2],
            fast_n - slow.len(),
            bad.first(),
            slow.first()
        ),
    );
}

#[test]
fn c10_spot_values() {
    let k = approx_k(0.1f64, CaseId::F1e).unwrap();
    let kv = legendre_k_prime(0.1).unwrap();
    let k_ok = k.contains(kv) && (k.lo - 3.694650).abs() < 5e-7 && (k.hi - 3.698125).abs() < 5e-7;
    let f = approx(CaseId::F1a, &[0.01f64, 0.01, 1.0]).unwrap();
    let fv = rf(0.01f64, 0.01, 1.0).unwrap();
    let f_ok = f.contains(fv) && (fv - 3.008302149854818).abs() < 1e-14;
    let g = rg(1.0, 1.0, 0.0).unwrap();
    let via = (rd(0.0, 1.0, 1.0).unwrap() + rd(0.0, 1.0, 1.0).unwrap()) / 6.0;
    let g_ok = (g - FRAC_PI_4).abs() <= 2.0 * f64::EPSILON && (via - FRAC_PI_4).abs() <= 4.0 * f64::EPSILON;
    verdict(
        10,
        k_ok && f_ok && g_ok,
        format!(
            "K(k'=0.1) {kv} in [{}, {}]; rf(0.01,0.01,1) {fv} in [{}, {}]; rg(1,1,0) {g}, via rd {via}",
            k.lo, k.hi, f.lo, f.hi
        ),
    );
}
