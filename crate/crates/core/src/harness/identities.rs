//! Fuzzed identities and inequality chains of the reference evaluators.
//!
//! Errors are measured relative to the largest term of each identity, so a
//! right side that cancels does not inflate the relative error.

use std::f64::consts::{FRAC_2_PI, PI};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use super::sampling::{rng, sample_positive};
use super::{CampaignReport, CheckRow, Violation};
use crate::bounds::{Bracket, Check};
use crate::error::{Error, Result};
use crate::oracle::{integrate_half_line, oracle, Kind, ORACLE_REL_TOL};
use crate::reference::{agm, legendre_e_prime, legendre_k_prime, rc, rd, rf, rg, rj};
use crate::scalar::{ulp_slack, within_ulps};

/// Decades of the fuzzed arguments, `[1e-3, 1e3]`.
const DECADES: (f64, f64) = (-3.0, 3.0);
/// Homogeneity budget per evaluation, in ulps. Both sides are rounded
/// independently, so their difference is held to twice this.
pub const HOMOGENEITY_ULPS: u32 = 4;
/// Band, in ulps, for the non-strict inequality chains.
const CHAIN_BAND_ULPS: u32 = 4;

macro_rules! identities {
    ($($id:ident => $name:literal, $tol:expr;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId { $($id),* }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$id),*];

            pub fn name(self) -> &'static str {
                match self { $(IdentityId::$id => $name),* }
            }

            /// Tolerance relative to the largest term; 0 means exact.
            pub fn tol(self) -> f64 {
                match self { $(IdentityId::$id => $tol),* }
            }
        }
    };
}

identities! {
    Permutation => "permutation", 0.0;
    Homogeneity => "homogeneity", f64::EPSILON * (2 * HOMOGENEITY_ULPS) as f64;
    Reduction => "reduction", 1e-13;
    RgRdSum => "rg_rd_sum", 1e-11;
    RgComplete => "rg_complete", 1e-11;
    KMinusE => "k_minus_e", 1e-12;
    EMinusK => "e_minus_k", 1e-12;
    RdCyclicSum => "rd_cyclic_sum", 1e-11;
    RgRfRd => "rg_rf_rd", 1e-11;
    AgmRf => "agm_rf", 1e-12;
    RfRcBounds => "rf_rc_bounds", 0.0;
    AgmChain => "agm_chain", 0.0;
    LogIntegralBracket => "log_integral_bracket", 0.0;
    LogDerivative => "log_derivative", 1e-8;
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|i| i.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

/// Result of one identity on one tuple.
struct Eval {
    /// Error relative to the identity's scale; 0 for a passing chain.
    err: f64,
    ok: bool,
    in_band: bool,
    detail: String,
}

fn rel_check(tol: f64, lhs: f64, rhs: f64, terms: &[f64]) -> Eval {
    let scale = terms.iter().fold(lhs.abs().max(rhs.abs()), |m, t| m.max(t.abs()));
    let err = (lhs - rhs).abs() / scale;
    Eval {
        err,
        ok: err <= tol,
        in_band: false,
        detail: format!("lhs {lhs:e} rhs {rhs:e}"),
    }
}

fn chain_check(values: &[f64]) -> Eval {
    let mut ok = true;
    let mut in_band = false;
    let mut worst: f64 = 0.0;
    for w in values.windows(2) {
        let band = ulp_slack(w[0].abs().max(w[1].abs()), CHAIN_BAND_ULPS);
        let d = w[1] - w[0];
        if d < -band || !d.is_finite() {
            ok = false;
            worst = worst.max(-d / w[1].abs());
        } else if d.abs() <= band {
            in_band = true;
        }
    }
    Eval {
        err: worst,
        ok,
        in_band,
        detail: format!("chain {values:?}"),
    }
}

fn bracket_check(b: Bracket<f64>) -> Eval {
    let c = b.check(false, false);
    chain_result(c, b)
}

fn chain_result(c: Check, b: Bracket<f64>) -> Eval {
    Eval {
        err: if c == Check::Violated { ((b.lo - b.mid).max(b.mid - b.hi) / b.mid.abs()).max(0.0) } else { 0.0 },
        ok: c != Check::Violated,
        in_band: c == Check::InBand,
        detail: format!("{:e} <= {:e} <= {:e}", b.lo, b.mid, b.hi),
    }
}

fn ev(id: IdentityId, v: &[f64]) -> Result<Eval> {
    use IdentityId::*;
    let tol = id.tol();
    let (x, y, z) = (v[0], v[1], v[2]);
    Ok(match id {
        Permutation => {
            let f = rf(x, y, z)?;
            let g = rg(x, y, z)?;
            let j = rj(x, y, z, v[3])?;
            let perms = [[x, y, z], [x, z, y], [y, x, z], [y, z, x], [z, x, y], [z, y, x]];
            let mut ok = rd(x, y, z)? == rd(y, x, z)?;
            for p in perms {
                ok &= rf(p[0], p[1], p[2])? == f;
                ok &= rg(p[0], p[1], p[2])? == g;
                ok &= rj(p[0], p[1], p[2], v[3])? == j;
            }
            Eval {
                err: if ok { 0.0 } else { 1.0 },
                ok,
                in_band: false,
                detail: "results differ between permutations".into(),
            }
        }
        Homogeneity => {
            let l = v[3];
            let sl = l.sqrt();
            let pairs = [
                (rf(l * x, l * y, l * z)?, rf(x, y, z)? / sl),
                (rd(l * x, l * y, l * z)?, rd(x, y, z)? / (l * sl)),
                (rj(l * x, l * y, l * z, l * v[4])?, rj(x, y, z, v[4])? / (l * sl)),
                (rg(l * x, l * y, l * z)?, rg(x, y, z)? * sl),
            ];
            let err = pairs
                .iter()
                .map(|(a, b)| (a - b).abs() / b.abs())
                .fold(0.0, f64::max);
            let ok = pairs.iter().all(|(a, b)| within_ulps(*a, *b, 2 * HOMOGENEITY_ULPS));
            Eval {
                err,
                ok,
                in_band: false,
                detail: format!("lambda {l:e}: {pairs:?}"),
            }
        }
        Reduction => {
            let a = rel_check(tol, rf(x, y, y)?, rc(x, y)?, &[]);
            let exact = rj(x, y, z, z)? == rd(x, y, z)?;
            Eval {
                ok: a.ok && exact,
                ..a
            }
        }
        RgRdSum => {
            let t = [
                x * (y + z) * rd(y, z, x)?,
                y * (z + x) * rd(z, x, y)?,
                z * (x + y) * rd(x, y, z)?,
            ];
            rel_check(tol, 6.0 * rg(x, y, z)?, t.iter().sum(), &t)
        }
        RgComplete => {
            let t = [x * y * rd(0.0, x, y)?, x * y * rd(0.0, y, x)?];
            rel_check(tol, 6.0 * rg(x, y, 0.0)?, t[0] + t[1], &t)
        }
        KMinusE | EMinusK => {
            let kp = v[5];
            let kp2 = kp * kp;
            let k2 = (1.0 - kp) * (1.0 + kp);
            let (kk, ee) = (legendre_k_prime(kp)?, legendre_e_prime(kp)?);
            if id == KMinusE {
                rel_check(tol, kk - ee, k2 / 3.0 * rd(0.0, kp2, 1.0)?, &[kk, ee])
            } else {
                rel_check(tol, ee - kp2 * kk, k2 * kp2 / 3.0 * rd(0.0, 1.0, kp2)?, &[ee, kp2 * kk])
            }
        }
        RdCyclicSum => {
            let t = [rd(x, y, z)?, rd(z, x, y)?, rd(z, y, x)?];
            rel_check(tol, t.iter().sum(), 3.0 / (x * y * z).sqrt(), &t)
        }
        RgRfRd => {
            let t = [
                z * rf(x, y, z)?,
                -(z - x) * (z - y) * rd(x, y, z)? / 3.0,
                (x * y / z).sqrt(),
            ];
            rel_check(tol, 2.0 * rg(x, y, z)?, t.iter().sum(), &t)
        }
        AgmRf => {
            let m = agm(x.sqrt(), y.sqrt())?;
            rel_check(tol, rf(x, y, 0.0)?, PI / (2.0 * m), &[])
        }
        RfRcBounds => bracket_check(Bracket {
            lo: rc(x, (y + z) / 2.0)?,
            mid: rf(x, y, z)?,
            hi: rc(x, (y * z).sqrt())?,
        }),
        AgmChain => {
            // every eighth tuple is an equality case
            let y = if v[6] < 0.125 { x } else { y };
            let a = (x + y) / 2.0;
            let g = x.sqrt() * y.sqrt();
            chain_check(&[
                1.0 / a.sqrt(),
                (2.0 / (a + g)).sqrt(),
                2.0 / (((a + g) / 2.0).sqrt() + g.sqrt()),
                FRAC_2_PI * rf(x, y, 0.0)?,
                (2.0 / (a * g + g * g)).sqrt().sqrt(),
                1.0 / g.sqrt(),
            ])
        }
        LogIntegralBracket => {
            // 0 < x + y < z / 100
            let z = (x + y) * 100.0 * 10f64.powf(3.0 * v[6]);
            let y = if v[6] < 0.125 { x } else { y };
            let a = (x + y) / 2.0;
            let g = x.sqrt() * y.sqrt();
            let l = (2.0 * z / (a + g)).ln();
            let q = oracle(Kind::Rm1, &[x, y, z])?;
            let band = q.error + ulp_slack(q.value, 16);
            let (lo, hi) = (l / (z - g), l / (z - a));
            let ok = lo - band <= q.value && q.value <= hi + band;
            Eval {
                err: if ok { 0.0 } else { ((lo - q.value).max(q.value - hi) / q.value).max(0.0) },
                ok,
                in_band: false,
                detail: format!("{lo:e} <= {:e} (+- {band:e}) <= {hi:e} at z {z:e}", q.value),
            }
        }
        LogDerivative => {
            let lam = (x * y).sqrt() + (x * z).sqrt() + (y * z).sqrt();
            let s = (x * y * z).sqrt();
            let lhs = integrate_half_line(
                |t: f64| {
                    if t == 0.0 {
                        return 0.0;
                    }
                    let f = 1.0 / ((t + x).sqrt() * (t + y).sqrt() * (t + z).sqrt());
                    let d = -0.5 * f * (1.0 / (t + x) + 1.0 / (t + y) + 1.0 / (t + z));
                    t.ln() * d
                },
                &[x, y, z, 1.0],
                ORACLE_REL_TOL,
            )?;
            let t1 = (lam * lam / (4.0 * x * y * z)).ln() / s;
            let t2 = 4.0 / 3.0 * rj(x + lam, y + lam, z + lam, lam)?;
            rel_check(tol, lhs.value, t1 - t2, &[t1, t2])
        }
    })
}

fn draw(id: IdentityId, seed: u64, n: usize) -> Vec<Vec<f64>> {
    let mut r = rng(seed, 1000 + id as u64);
    (0..n)
        .map(|_| {
            let mut v = sample_positive(5, DECADES.0, DECADES.1, &mut r);
            v.push(r.gen_range(1e-3..1.0)); // k'
            v.push(r.gen::<f64>()); // switches
            v
        })
        .collect()
}

/// Runs every identity on `n` fuzzed tuples.
pub fn run_identities(seed: u64, n: usize) -> Result<CampaignReport> {
    run_identity_set(IdentityId::ALL, seed, n)
}

/// Runs the given identities on `n` fuzzed tuples each.
pub fn run_identity_set(ids: &[IdentityId], seed: u64, n: usize) -> Result<CampaignReport> {
    if n == 0 {
        return Err(Error::Campaign("n must be at least 1".into()));
    }
    let start = Instant::now();
    let mut rep = CampaignReport::new("identities", seed);
    for &id in ids {
        let tuples = draw(id, seed, n);
        let evals: Vec<Result<Eval>> = tuples.par_iter().map(|v| ev(id, v)).collect();
        let mut row = CheckRow {
            name: id.name().into(),
            samples: n,
            failures: 0,
            in_band: 0,
            max_err: 0.0,
            tol: id.tol(),
        };
        for (v, e) in tuples.iter().zip(evals) {
            let e = e.unwrap_or_else(|err| Eval {
                err: f64::INFINITY,
                ok: false,
                in_band: false,
                detail: err.to_string(),
            });
            row.max_err = row.max_err.max(e.err);
            row.in_band += e.in_band as usize;
            if !e.ok {
                row.failures += 1;
                rep.offending.push(Violation {
                    check: id.name().into(),
                    ratio: None,
                    args: v.clone(),
                    detail: e.detail,
                });
            }
        }
        if matches!(id, IdentityId::LogIntegralBracket | IdentityId::LogDerivative) {
            rep.quadrature_checks += n;
        }
        rep.checks.push(row);
    }
    rep.violations = rep.checks.iter().map(|c| c.failures).sum();
    rep.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_tuple_reduces_to_closed_forms() {
        let one = [1.0, 1.0, 1.0, 1.0, 1.0, 0.6, 0.5];
        for &id in IdentityId::ALL {
            let e = ev(id, &one).unwrap();
            assert!(e.ok, "{id}: {}", e.detail);
        }
        let t = rel_check(0.0, 3.0 * rd(1.0, 1.0, 1.0).unwrap(), 3.0, &[]);
        assert_eq!(t.err, 0.0);
    }

    #[test]
    fn log_derivative_at_unit_tuple() {
        let rhs = (9.0f64 / 4.0).ln() - 4.0 / 3.0 * rj(4.0, 4.0, 4.0, 3.0).unwrap();
        let e = ev(IdentityId::LogDerivative, &[1.0, 1.0, 1.0, 1.0, 1.0, 0.5, 0.5]).unwrap();
        assert!(e.ok && e.detail.contains(&format!("{rhs:e}")[..6]));
    }

    #[test]
    fn small_run_passes() {
        let r = run_identities(7, 200).unwrap();
        assert_eq!(r.violations, 0, "{:#?}", &r.offending[..r.offending.len().min(5)]);
        assert_eq!(r.checks.len(), IdentityId::ALL.len());
    }

    #[test]
    fn names_round_trip() {
        for &id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
    }
}
