use std::fmt::Write as _;

use baxter_core::verify::VerificationReport;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Invocation {
    pub command: String,
    pub family: String,
    pub n: usize,
    pub q: f64,
    pub gamma: f64,
    pub p: f64,
    pub trunc: usize,
    pub variant: String,
    pub theta: f64,
    pub theta2: f64,
    #[serde(rename = "L")]
    pub l: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl From<&VerificationReport> for CheckSummary {
    fn from(r: &VerificationReport) -> Self {
        Self {
            name: r.name().to_string(),
            samples: r.samples().len(),
            max_residual: r.max_residual(),
            tol: r.tol(),
            pass: r.passed(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub version: String,
    pub schema_version: u32,
    pub invocation: Invocation,
    pub checks: Vec<CheckSummary>,
    pub pass: bool,
}

impl ReportDocument {
    pub fn new(invocation: Invocation, reports: &[VerificationReport]) -> Self {
        let checks: Vec<CheckSummary> = reports.iter().map(CheckSummary::from).collect();
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema_version: SCHEMA_VERSION,
            invocation,
            checks,
            pass,
        }
    }

    /// Plain-text check table, one line per check plus the verdict.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<28} samples={:<3} max_residual={:.2e} tol={:.2e} {}",
                c.name,
                c.samples,
                c.max_residual,
                c.tol,
                verdict(c.pass)
            );
        }
        let _ = writeln!(out, "verdict: {}", verdict(self.pass));
        out
    }
}

pub fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
