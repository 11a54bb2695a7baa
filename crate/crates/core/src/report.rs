//! Verified inequalities as structured, serializable reports.

use serde::Serialize;
use std::io::{self, Write};

/// Relative tolerance for comparing an exact or floating left-hand side
/// against a floating right-hand side.
pub const REL_TOL: f64 = 1e-9;

/// One verified inequality lhs ≤ rhs.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
}

impl BoundReport {
    /// pass ⇔ lhs ≤ rhs within [`REL_TOL`] relative slack.
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let pass = lhs <= rhs + REL_TOL * rhs.abs();
        BoundReport {
            label: label.into(),
            lhs,
            rhs,
            slack: rhs - lhs,
            pass,
        }
    }
}

/// A report row with the instance parameters used by the CSV schema:
/// label, q, a, b, |E|, lhs, rhs, slack, pass. Inapplicable parameter
/// columns stay empty.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub q: u64,
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub set_size: Option<usize>,
    #[serde(flatten)]
    pub report: BoundReport,
}

pub const REPORT_CSV_HEADER: &str = "label,q,a,b,|E|,lhs,rhs,slack,pass";

fn opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ReportRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.report.label,
            self.q,
            opt(self.a),
            opt(self.b),
            opt(self.set_size),
            self.report.lhs,
            self.report.rhs,
            self.report.slack,
            self.report.pass
        )
    }
}

pub fn write_reports_csv(rows: &[ReportRow], w: &mut impl Write) -> io::Result<()> {
    writeln!(w, "{REPORT_CSV_HEADER}")?;
    for row in rows {
        writeln!(w, "{}", row.to_csv())?;
    }
    Ok(())
}
