//! Fuzzing of the elementary inequalities.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use super::sampling::{rng, sample_positive};
use super::{CampaignReport, CheckRow, Violation};
use crate::bounds::{a10_via_az, bracket, theta_of, Bracket, Check, IneqId, EQUALITY_BAND_ULPS};
use crate::error::{Error, Result};
use crate::scalar::ulp_slack;

/// Decades of fuzzed arguments, `[1e-6, 1e6]`.
pub const DECADES: (f64, f64) = (-6.0, 6.0);
/// Fraction of tuples drawn as equality configurations, for ids that have one.
const EQUALITY_SHARE: f64 = 0.125;
/// Points per monotonicity grid.
const GRID_POINTS: usize = 64;

struct Tuple {
    t: f64,
    args: Vec<f64>,
}

fn draw(id: IneqId, seed: u64, n: usize) -> Vec<Tuple> {
    let mut r = rng(seed, 2000 + id as u64);
    (0..n)
        .map(|_| {
            let mut v = sample_positive(1 + id.arity(), DECADES.0, DECADES.1, &mut r);
            let t = if id.allows_zero_t() && r.gen::<f64>() < 0.01 { 0.0 } else { v.remove(0) };
            if v.len() > id.arity() {
                v.truncate(id.arity());
            }
            if matches!(id, IneqId::A5 | IneqId::A6 | IneqId::A6a | IneqId::AX | IneqId::AY | IneqId::AZ)
                && r.gen::<f64>() < EQUALITY_SHARE
            {
                let x = v[0];
                v.iter_mut().for_each(|w| *w = x);
            }
            Tuple { t, args: v }
        })
        .collect()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= ulp_slack(a.abs().max(b.abs()), EQUALITY_BAND_ULPS)
}

/// `Err(detail)` when the tuple violates `id`.
fn check_one(id: IneqId, s: &Tuple) -> std::result::Result<bool, String> {
    let b = bracket(id, s.t, &s.args).map_err(|e| e.to_string())?;
    let (sl, sh) = id.strictness();
    let equality = id.is_equality_case(&s.args);
    let c = if equality { b.check(sl, false) } else { b.check(sl, sh) };
    if c == Check::Violated {
        return Err(format!("{:e} <= {:e} <= {:e} fails", b.lo, b.mid, b.hi));
    }
    // only the non-strict sides are attained; a strict side stays strict
    if equality && !((sl || close(b.lo, b.mid)) && (sh || close(b.mid, b.hi))) {
        return Err(format!("equality case not attained: {:e} {:e} {:e}", b.lo, b.mid, b.hi));
    }
    Ok(c == Check::InBand)
}

/// Consistency of the (AZ) route to (A10): `lo_A10 <= lo_AZ <= mid <= hi_AZ <= hi_A10`.
///
/// Adjacent terms come from unrelated formulas, each rounded on its own, so
/// the band is the equality band per side.
fn check_chain(s: &[f64]) -> std::result::Result<bool, String> {
    let (t, x, y, z) = (s[0], s[1], s[2], s[3]);
    let outer = bracket(IneqId::A10, t, &[x, y, z]).map_err(|e| e.to_string())?;
    let inner = a10_via_az(t, x, y, z).map_err(|e| e.to_string())?;
    let vals = [outer.lo, inner.lo, inner.mid, inner.hi, outer.hi];
    let mut band = false;
    for w in vals.windows(2) {
        let slack = ulp_slack(w[0].abs().max(w[1].abs()), 2 * EQUALITY_BAND_ULPS);
        if w[1] - w[0] < -slack {
            return Err(format!("chain {vals:?}"));
        }
        band |= (w[1] - w[0]).abs() <= slack;
    }
    Ok(band)
}

/// A2 at `(t, x)` equals A1 at `(x, t)`; A4 at `(t, x)` equals A3 at `(x, t)`.
fn check_interchange(s: &[f64]) -> std::result::Result<bool, String> {
    let (t, x) = (s[0], s[1]);
    let eq = |u: Bracket<f64>, v: Bracket<f64>| u == v;
    let a = bracket(IneqId::A2, t, &[x]).map_err(|e| e.to_string())?;
    let b = bracket(IneqId::A1, x, &[t]).map_err(|e| e.to_string())?;
    let c = bracket(IneqId::A4, t, &[x]).map_err(|e| e.to_string())?;
    let d = bracket(IneqId::A3, x, &[t]).map_err(|e| e.to_string())?;
    if eq(a, b) && eq(c, d) {
        Ok(false)
    } else {
        Err(format!("{a:?} vs {b:?}; {c:?} vs {d:?}"))
    }
}

/// θ of A3 increases and θ of A4 decreases along an increasing t grid,
/// staying inside `(1, 3/2)`.
fn check_monotone(x: f64) -> std::result::Result<bool, String> {
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| 10f64.powf(DECADES.0 + (DECADES.1 - DECADES.0) * i as f64 / (GRID_POINTS - 1) as f64))
        .collect();
    for (id, increasing) in [(IneqId::A3, true), (IneqId::A4, false)] {
        let th: Vec<f64> = grid
            .iter()
            .map(|&t| theta_of(id, t, &[x]))
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;
        for w in th.windows(2) {
            let slack = ulp_slack(w[0], EQUALITY_BAND_ULPS);
            let step = if increasing { w[1] - w[0] } else { w[0] - w[1] };
            if step < -slack {
                return Err(format!("{id} not monotone at x = {x:e}: {} then {}", w[0], w[1]));
            }
        }
        if th.iter().any(|&v| !(v >= 1.0 && v <= 1.5)) {
            return Err(format!("{id} theta left [1, 3/2] at x = {x:e}"));
        }
    }
    Ok(false)
}

fn tally<F>(rep: &mut CampaignReport, name: &str, inputs: Vec<Vec<f64>>, f: F)
where
    F: Fn(&[f64]) -> std::result::Result<bool, String> + Sync,
{
    let res: Vec<_> = inputs.par_iter().map(|v| f(v)).collect();
    let mut row = CheckRow {
        name: name.into(),
        samples: inputs.len(),
        failures: 0,
        in_band: 0,
        max_err: 0.0,
        tol: 0.0,
    };
    for (v, r) in inputs.into_iter().zip(res) {
        match r {
            Ok(band) => row.in_band += band as usize,
            Err(detail) => {
                row.failures += 1;
                rep.offending.push(Violation {
                    check: name.into(),
                    ratio: None,
                    args: v,
                    detail,
                });
            }
        }
    }
    rep.checks.push(row);
}

/// Fuzzes each inequality in `ids` on `n` tuples, plus the monotonicity,
/// interchange and (AZ)-to-(A10) consistency checks.
///
/// Strict inequalities that hold only within the equality band are counted
/// in `in_band`, not as failures.
pub fn run_bounds(ids: &[IneqId], seed: u64, n: usize) -> Result<CampaignReport> {
    if n == 0 {
        return Err(Error::Campaign("n must be at least 1".into()));
    }
    let start = Instant::now();
    let mut rep = CampaignReport::new("bounds", seed);
    for &id in ids {
        let tuples: Vec<Vec<f64>> = draw(id, seed, n)
            .into_iter()
            .map(|s| std::iter::once(s.t).chain(s.args).collect())
            .collect();
        tally(&mut rep, id.name(), tuples, |v| {
            check_one(id, &Tuple { t: v[0], args: v[1..].to_vec() })
        });
    }
    let mut r = rng(seed, 3000);
    let extra = (n / 10).max(1);
    if ids.contains(&IneqId::A3) || ids.contains(&IneqId::A4) {
        let xs: Vec<Vec<f64>> = (0..(n / 100).max(1))
            .map(|_| sample_positive(1, DECADES.0, DECADES.1, &mut r))
            .collect();
        tally(&mut rep, "A3_A4_monotone", xs, |v| check_monotone(v[0]));
        let pairs: Vec<Vec<f64>> = (0..extra).map(|_| sample_positive(2, DECADES.0, DECADES.1, &mut r)).collect();
        tally(&mut rep, "interchange", pairs, check_interchange);
    }
    if ids.contains(&IneqId::A10) || ids.contains(&IneqId::AZ) {
        let quads: Vec<Vec<f64>> = (0..extra).map(|_| sample_positive(4, DECADES.0, DECADES.1, &mut r)).collect();
        tally(&mut rep, "AZ_implies_A10", quads, check_chain);
    }
    rep.violations = rep.checks.iter().map(|c| c.failures).sum();
    rep.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(rep)
}
