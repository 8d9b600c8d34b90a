//! JSON and CSV output.

use serde::Serialize;

use crate::check::{CheckConfig, CheckReport, Classification, Verdict};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Output of the `suite` verb.
#[derive(Serialize)]
pub struct SuiteDocument<'a> {
    pub reports: &'a [CheckReport],
    pub classification: Option<&'a Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification_error: Option<String>,
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(std::io::Error::from)?;
    s.push('\n');
    Ok(s)
}

const CSV_HEADER: [&str; 10] = [
    "check",
    "verdict",
    "worst_violation",
    "witnesses",
    "polynomial",
    "seed",
    "julia_samples",
    "boundary_samples",
    "interior_samples",
    "tol_rel",
];

fn num(x: f64) -> String {
    if x.is_finite() {
        x.to_string()
    } else {
        String::new()
    }
}

/// One row per check; a classification adds a row whose verdict column holds
/// the kind and whose violation column holds the coefficient residual.
pub fn to_csv(reports: &[CheckReport], classification: Option<&Classification>, cfg: &CheckConfig) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| std::io::Error::other(e);
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in reports {
        let c = &r.config;
        w.write_record([
            r.check.as_str().to_string(),
            format!("{:?}", r.verdict),
            num(r.worst_violation),
            r.witnesses.len().to_string(),
            r.polynomial.clone(),
            c.seed.to_string(),
            c.julia_samples.to_string(),
            c.boundary_samples.to_string(),
            c.interior_samples.to_string(),
            c.tol_rel.to_string(),
        ])
        .map_err(io)?;
    }
    if let Some(cl) = classification {
        w.write_record([
            "classify_equality".to_string(),
            format!("{:?}", cl.kind),
            num(cl.coefficient_residual),
            "0".to_string(),
            cl.polynomial.clone(),
            cfg.seed.to_string(),
            cfg.julia_samples.to_string(),
            cfg.boundary_samples.to_string(),
            cfg.interior_samples.to_string(),
            cfg.tol_rel.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// 0 if every verdict is `Pass`, 1 if any is `Fail`, otherwise 3.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        1
    } else if reports.iter().all(|r| r.verdict == Verdict::Pass) {
        0
    } else {
        3
    }
}
