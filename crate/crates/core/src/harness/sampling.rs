//! Argument tuples with a pinned smallness ratio.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::asym::{CaseId, FuncKind};

/// Decades over which the overall scale is drawn, `[1e-3, 1e2]`.
pub const SCALE_DECADES: (f64, f64) = (-3.0, 2.0);
/// Decades of spread within a group, so that tuples stay in `[1e-3, 1e3]`
/// before the small group is rescaled.
pub const SPREAD_DECADES: f64 = 1.0;

/// Which argument slots are small, large, or forced to zero for a case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub small: &'static [usize],
    pub large: &'static [usize],
    pub zeros: &'static [usize],
}

const fn lay(small: &'static [usize], large: &'static [usize], zeros: &'static [usize]) -> Layout {
    Layout { small, large, zeros }
}

pub fn layout(case: CaseId) -> Layout {
    use CaseId::*;
    match case {
        C1 => lay(&[0], &[1], &[]),
        C2a | C2b | C2c => lay(&[1], &[0], &[]),
        F1a | F1b | F1c | F1d | D1 | G1a => lay(&[0, 1], &[2], &[]),
        F2a | D2a | D2b | D2c | G2 => lay(&[2], &[0, 1], &[]),
        D3 => lay(&[1, 2], &[0], &[]),
        D4 => lay(&[0], &[1, 2], &[]),
        J1a => lay(&[0, 1, 2], &[3], &[]),
        J1b => lay(&[0, 1], &[3], &[2]),
        J2a | J2b => lay(&[3], &[0, 1, 2], &[]),
        J3 => lay(&[0, 1], &[2, 3], &[]),
        J4a | J4c => lay(&[2, 3], &[0, 1], &[]),
        J4b => lay(&[3], &[0, 1], &[2]),
        J5 => lay(&[0], &[1, 2, 3], &[]),
        J6a => lay(&[1, 2, 3], &[0], &[]),
        J6complete => lay(&[2, 3], &[0], &[1]),
        G1b => lay(&[1], &[2], &[0]),
        // single argument k'; the ratio is k'^2
        F1e | F1f | G1c => lay(&[0], &[], &[]),
    }
}

/// Deterministic generator for a campaign stream.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn log_uniform(rng: &mut ChaCha8Rng, lo_dec: f64, hi_dec: f64) -> f64 {
    10f64.powf(rng.gen_range(lo_dec..hi_dec))
}

/// One argument tuple for `case` with `max(small) / min(large) = ratio`.
///
/// With `zero_small` the small group is set to zero instead (C1 at `x = 0`).
pub fn sample_case(case: CaseId, ratio: f64, zero_small: bool, rng: &mut ChaCha8Rng) -> Vec<f64> {
    if matches!(case.func(), FuncKind::K | FuncKind::E) {
        return vec![ratio.sqrt()];
    }
    let l = layout(case);
    let mut v = vec![0.0; case.func().arity()];
    let s = log_uniform(rng, SCALE_DECADES.0, SCALE_DECADES.1);
    for &i in l.small.iter().chain(l.large) {
        v[i] = s * log_uniform(rng, 0.0, SPREAD_DECADES);
    }
    let min_large = l.large.iter().map(|&i| v[i]).fold(f64::INFINITY, f64::min);
    let max_small = l.small.iter().map(|&i| v[i]).fold(0.0, f64::max);
    let k = ratio * min_large / max_small;
    for &i in l.small {
        v[i] = if zero_small { 0.0 } else { v[i] * k };
    }
    for &i in l.zeros {
        v[i] = 0.0;
    }
    v
}

/// Log-uniform positive tuple over `10^[lo_dec, hi_dec)`.
pub fn sample_positive(n: usize, lo_dec: f64, hi_dec: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| log_uniform(rng, lo_dec, hi_dec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_is_pinned() {
        let mut r = rng(3, 0);
        for &case in CaseId::ALL {
            if matches!(case.func(), FuncKind::K | FuncKind::E) {
                continue;
            }
            let l = layout(case);
            let v = sample_case(case, 1e-5, false, &mut r);
            let mx = l.small.iter().map(|&i| v[i]).fold(0.0, f64::max);
            let mn = l.large.iter().map(|&i| v[i]).fold(f64::INFINITY, f64::min);
            assert!((mx / mn / 1e-5 - 1.0).abs() < 1e-12, "{case}");
            for &i in l.zeros {
                assert_eq!(v[i], 0.0);
            }
        }
    }

    #[test]
    fn reproducible() {
        let a = sample_case(CaseId::J3, 1e-3, false, &mut rng(9, 2));
        let b = sample_case(CaseId::J3, 1e-3, false, &mut rng(9, 2));
        assert_eq!(a, b);
    }
}
