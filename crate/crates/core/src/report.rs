//! Machine-readable verification reports.
//!
//! Every verification suite in the crate returns a [`Report`]: a list of
//! residual records and a summary. A report passes exactly when every
//! record's residual is strictly below the run tolerance. NaN residuals
//! never pass.

use serde::{Deserialize, Serialize};

/// One residual measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    /// Identity being checked, e.g. `"pentagon"`.
    pub id: String,
    /// Labels and indices of the instance, e.g. `"a=tau,b=tau"`.
    pub instance: String,
    /// Residual of this instance.
    pub residual: f64,
    /// Whether `residual < tol`.
    pub pass: bool,
}

/// Result of one verification suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Suite name.
    pub check: String,
    /// Tolerance the records were judged against.
    pub tol: f64,
    /// Number of records.
    pub instances: usize,
    /// Largest residual over all records (0 for an empty suite).
    pub max_residual: f64,
    /// Whether every record passed.
    pub pass: bool,
    /// Individual records, in deterministic order.
    pub records: Vec<Record>,
}

impl Report {
    /// An empty passing report.
    pub fn new(check: impl Into<String>, tol: f64) -> Self {
        Self {
            check: check.into(),
            tol,
            instances: 0,
            max_residual: 0.0,
            pass: true,
            records: Vec::new(),
        }
    }

    /// Append a record and update the summary.
    pub fn push(&mut self, id: impl Into<String>, instance: impl Into<String>, residual: f64) {
        let pass = residual < self.tol;
        self.pass &= pass;
        self.max_residual = if residual.is_nan() || self.max_residual.is_nan() {
            f64::NAN
        } else {
            self.max_residual.max(residual)
        };
        self.instances += 1;
        self.records.push(Record {
            id: id.into(),
            instance: instance.into(),
            residual,
            pass,
        });
    }

    /// Append every record of `other`, re-judging against this report's tolerance.
    pub fn merge(&mut self, other: Report) {
        for r in other.records {
            self.push(r.id, r.instance, r.residual);
        }
    }

    /// Largest residual among records with the given id, if any.
    pub fn max_for(&self, id: &str) -> Option<f64> {
        self.records
            .iter()
            .filter(|r| r.id == id)
            .map(|r| r.residual)
            .reduce(f64::max)
    }

    /// Distinct record ids in order of first appearance.
    pub fn ids(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.records {
            if !out.contains(&r.id) {
                out.push(r.id.clone());
            }
        }
        out
    }

    /// Records with the given id.
    pub fn records_for<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.records.iter().filter(move |r| r.id == id)
    }
}

/// Output encoding for [`emit_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Pretty-printed JSON with a fixed key order.
    Json,
    /// Human-readable summary, one line per record id.
    Text,
}

/// Serialize a report. JSON output is a pure function of the report.
pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!(
                "{}: {} ({} instances, max residual {:.3e}, tol {:.1e})\n",
                report.check,
                if report.pass { "PASS" } else { "FAIL" },
                report.instances,
                report.max_residual,
                report.tol
            );
            for id in report.ids() {
                let recs: Vec<&Record> = report.records_for(&id).collect();
                let worst = recs.iter().map(|r| r.residual).fold(0.0, f64::max);
                let failed = recs.iter().filter(|r| !r.pass).count();
                s.push_str(&format!(
                    "  {:<28} {:>6} records  max {:.3e}  {}\n",
                    id,
                    recs.len(),
                    worst,
                    if failed == 0 {
                        "ok".to_string()
                    } else {
                        format!("{failed} failed")
                    }
                ));
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_passes() {
        let r = Report::new("empty", 1e-9);
        assert!(r.pass);
        assert_eq!(r.instances, 0);
        let json = emit_report(&r, Format::Json);
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn nan_residual_fails() {
        let mut r = Report::new("x", 1e-9);
        r.push("id", "", f64::NAN);
        assert!(!r.pass);
    }

    #[test]
    fn pass_iff_all_below_tol() {
        let mut r = Report::new("x", 1e-3);
        r.push("a", "", 1e-4);
        assert!(r.pass);
        r.push("b", "", 1e-3);
        assert!(!r.pass);
        assert_eq!(r.max_for("b"), Some(1e-3));
    }
}
