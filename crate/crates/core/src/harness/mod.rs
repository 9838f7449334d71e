//! Verification campaigns.
//!
//! Every campaign pre-generates its samples from the seed and only then
//! evaluates them (in parallel), so reports do not depend on scheduling.

mod cases;
pub mod identities;
pub mod ineq;
mod orders;
pub mod report;
pub mod sampling;

use serde::Serialize;

pub use cases::{case_oracle, case_reference, run_containment, run_order_fit, Campaign};
pub use identities::{run_identities, IdentityId};
pub use ineq::run_bounds;
pub use orders::{expected_order, order_slack, ExpectedOrder};

/// Aggregates for one grid ratio of a case campaign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub ratio: f64,
    pub samples: usize,
    /// Samples whose enclosure was checked.
    pub evaluated: usize,
    /// Samples excluded because the case flags its upper endpoint as uncertified.
    pub gated: usize,
    pub violations: usize,
    /// Largest `(hi - lo) / |estimate|`, after ulp widening.
    pub max_rel_width: f64,
    /// Largest relative width before widening.
    pub max_raw_rel_width: f64,
}

/// Aggregates for one identity or inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    /// Strict inequalities that held only to within the equality band.
    pub in_band: usize,
    /// Largest error relative to the check's own scale.
    pub max_err: f64,
    pub tol: f64,
}

/// Where realized error symbols fell inside their brackets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaStats {
    pub checked: usize,
    pub inside: usize,
    pub at_endpoint: usize,
    /// Smallest and largest `(symbol - lo) / (hi - lo)` over samples with `hi > lo`.
    pub min_position: f64,
    pub max_position: f64,
}

impl Default for ThetaStats {
    fn default() -> Self {
        Self {
            checked: 0,
            inside: 0,
            at_endpoint: 0,
            min_position: f64::INFINITY,
            max_position: f64::NEG_INFINITY,
        }
    }
}

/// One failed check, with enough to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub check: String,
    pub ratio: Option<f64>,
    pub args: Vec<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignReport {
    /// Case tag, or the name of the suite.
    pub subject: String,
    pub seed: u64,
    pub rows: Vec<RatioRow>,
    pub checks: Vec<CheckRow>,
    pub violations: usize,
    pub offending: Vec<Violation>,
    pub theta: Option<ThetaStats>,
    pub slope: Option<f64>,
    pub expected_order: Option<f64>,
    pub slope_ok: Option<bool>,
    /// Number of samples checked against the quadrature oracle.
    pub quadrature_checks: usize,
    pub wall_time_ms: f64,
}

impl CampaignReport {
    pub(crate) fn new(subject: impl Into<String>, seed: u64) -> Self {
        Self {
            subject: subject.into(),
            seed,
            rows: Vec::new(),
            checks: Vec::new(),
            violations: 0,
            offending: Vec::new(),
            theta: None,
            slope: None,
            expected_order: None,
            slope_ok: None,
            quadrature_checks: 0,
            wall_time_ms: 0.0,
        }
    }

    /// No violations and, if a slope was fitted, a slope within slack.
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.slope_ok != Some(false)
    }

    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        let mut a = self.clone();
        a.wall_time_ms = other.wall_time_ms;
        a == *other
    }
}
