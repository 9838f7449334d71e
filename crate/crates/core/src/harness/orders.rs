//! Expected width exponents, shipped as reviewed config.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::asym::CaseId;

const CONFIG: &str = include_str!("../../config/expected_orders.toml");

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ExpectedOrder {
    /// Exponent of the ratio in the relative width.
    pub order: f64,
    /// Exponent of `ln(1/ratio)` in the relative width.
    pub log_power: i32,
    /// Whether the exponent was derived by hand rather than stated.
    pub derived: bool,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Deserialize)]
struct Table {
    slack: f64,
    cases: BTreeMap<String, ExpectedOrder>,
}

fn table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    T.get_or_init(|| toml::from_str(CONFIG).expect("config/expected_orders.toml is well-formed"))
}

/// Allowed deviation between fitted slope and expected order.
pub fn order_slack() -> f64 {
    table().slack
}

pub fn expected_order(case: CaseId) -> Option<&'static ExpectedOrder> {
    table().cases.get(case.name())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_has_a_derived_entry() {
        for &c in CaseId::ALL {
            let e = expected_order(c).unwrap_or_else(|| panic!("{c} missing"));
            assert!(e.derived && e.order >= 0.0);
        }
        assert_eq!(table().cases.len(), CaseId::ALL.len());
        assert_eq!(order_slack(), 0.15);
    }
}
