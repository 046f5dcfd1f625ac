//! Tabular reports.
//!
//! CSV columns are `params..., value..., expected, pass, witness_ref`. The
//! witness reference of a failing row is the offending Betti table, face or
//! trial list; passing rows leave it empty.

use serde::Serialize;

use crate::error::Result;
use crate::homology::ClaimRow;
use crate::tverberg::TrialReport;

pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub params: Vec<(String, String)>,
    pub values: Vec<(String, String)>,
    pub expected: String,
    pub pass: bool,
    pub witness_ref: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: u32,
    pub kind: String,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn from_claims(kind: &str, rows: &[ClaimRow]) -> Self {
        let rows = rows
            .iter()
            .map(|r| ReportRow {
                params: r.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
                values: vec![
                    ("f_vector".into(), r.f_vector.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")),
                    ("observed".into(), r.observed.clone()),
                ],
                expected: r.expected.clone(),
                pass: r.pass,
                witness_ref: r.witness.clone().unwrap_or_default(),
            })
            .collect();
        Report { version: REPORT_FORMAT_VERSION, kind: kind.into(), rows }
    }

    pub fn from_trials(report: &TrialReport) -> Self {
        let s = &report.spec;
        let witness_ref = report.failures.iter().map(|i| format!("seed {} stream {i}", s.seed)).collect::<Vec<_>>().join("; ");
        let row = ReportRow {
            params: vec![
                ("kind".into(), s.kind.to_string()),
                ("q".into(), s.q.to_string()),
                ("d".into(), s.d.to_string()),
                ("colors".into(), s.colors.to_string()),
                ("trials".into(), s.trials.to_string()),
                ("seed".into(), s.seed.to_string()),
            ],
            values: vec![
                ("certified".into(), report.certified.to_string()),
                ("degenerate".into(), report.degenerate.to_string()),
                ("failed".into(), report.failures.len().to_string()),
            ],
            expected: "all non-degenerate trials certified".into(),
            pass: report.all_certified(),
            witness_ref,
        };
        Report { version: REPORT_FORMAT_VERSION, kind: "trials".into(), rows: vec![row] }
    }

    /// Header from the first row; rows with other parameter names are
    /// written positionally.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if let Some(first) = self.rows.first() {
            let mut header: Vec<&str> = first.params.iter().map(|(k, _)| k.as_str()).collect();
            header.extend(first.values.iter().map(|(k, _)| k.as_str()));
            header.extend(["expected", "pass", "witness_ref"]);
            w.write_record(&header)?;
        }
        for r in &self.rows {
            let mut rec: Vec<String> = r.params.iter().map(|(_, v)| v.clone()).collect();
            rec.extend(r.values.iter().map(|(_, v)| v.clone()));
            rec.extend([r.expected.clone(), r.pass.to_string(), r.witness_ref.clone()]);
            w.write_record(&rec)?;
        }
        Ok(w.into_inner().map_err(|e| e.into_error())?)
    }
}
