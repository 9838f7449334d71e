//! JSON and CSV output of campaign reports.
//!
//! CSV columns: `case, ratio, samples, violations, max_rel_width, slope, seed`.
//! Case campaigns give one row per ratio; identity and inequality suites one
//! row per check, with an empty ratio and the check's largest error in
//! `max_rel_width`.

use std::io::Write;

use serde::Serialize;

use super::CampaignReport;
use crate::error::{Error, Result};

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    case: &'a str,
    ratio: Option<f64>,
    samples: usize,
    violations: usize,
    max_rel_width: f64,
    slope: Option<f64>,
    seed: u64,
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Campaign(format!("report output failed: {e}"))
}

pub fn write_csv<W: Write>(reports: &[CampaignReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        for row in &r.rows {
            w.serialize(CsvRow {
                case: &r.subject,
                ratio: Some(row.ratio),
                samples: row.samples,
                violations: row.violations,
                max_rel_width: row.max_rel_width,
                slope: r.slope,
                seed: r.seed,
            })
            .map_err(io)?;
        }
        for c in &r.checks {
            w.serialize(CsvRow {
                case: &c.name,
                ratio: None,
                samples: c.samples,
                violations: c.failures,
                max_rel_width: c.max_err,
                slope: None,
                seed: r.seed,
            })
            .map_err(io)?;
        }
    }
    w.flush().map_err(io)
}

pub fn to_json(reports: &[CampaignReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::RatioRow;

    #[test]
    fn csv_has_schema_header() {
        let mut r = CampaignReport::new("F1a", 42);
        r.rows.push(RatioRow {
            ratio: 1e-3,
            samples: 5,
            evaluated: 5,
            gated: 0,
            violations: 0,
            max_rel_width: 1e-4,
            max_raw_rel_width: 1e-4,
        });
        r.slope = Some(1.0);
        let mut buf = Vec::new();
        write_csv(&[r.clone()], &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("case,ratio,samples,violations,max_rel_width,slope,seed"));
        assert_eq!(lines.next(), Some("F1a,0.001,5,0,0.0001,1.0,42"));
        assert!(to_json(&[r]).unwrap().contains("\"subject\": \"F1a\""));
    }
}
