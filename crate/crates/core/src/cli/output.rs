use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::RunConfig;
use crate::error::{Error, Result};
use crate::verify::{SharpnessReport, SuiteSummary, VerificationReport};

#[derive(Serialize)]
struct ReportFile<'a> {
    reports: &'a [VerificationReport],
    summary: &'a SuiteSummary,
}

pub(super) fn reports_json(reports: &[VerificationReport], summary: &SuiteSummary) -> Result<String> {
    Ok(serde_json::to_string_pretty(&ReportFile { reports, summary })? + "\n")
}

#[derive(Serialize)]
struct Row<'a> {
    case_id: &'a str,
    phi_id: &'a str,
    lhs: f64,
    lhs_error: f64,
    rhs_interior: f64,
    rhs_interior_error: f64,
    rhs_boundary: f64,
    rhs_boundary_error: f64,
    remainder: Option<f64>,
    remainder_error: Option<f64>,
    margin: f64,
    combined_error: f64,
    verdict: &'a str,
    samples: usize,
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
}

/// One row per report; term lists are summed.
pub(super) fn reports_csv(reports: &[VerificationReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        let sum = |t: &[crate::verify::NamedResult]| {
            t.iter().fold((0.0, 0.0), |(v, e), x| (v + x.result.value, e + x.result.error_estimate))
        };
        let (iv, ie) = sum(&r.rhs_interior);
        let (bv, be) = sum(&r.rhs_boundary);
        let verdict = match r.verdict {
            crate::verify::Verdict::Pass => "pass",
            crate::verify::Verdict::Fail => "fail",
            crate::verify::Verdict::Inconclusive => "inconclusive",
        };
        w.serialize(Row {
            case_id: &r.case_id,
            phi_id: &r.phi_id,
            lhs: r.lhs.value,
            lhs_error: r.lhs.error_estimate,
            rhs_interior: iv,
            rhs_interior_error: ie,
            rhs_boundary: bv,
            rhs_boundary_error: be,
            remainder: r.remainder.map(|x| x.value),
            remainder_error: r.remainder.map(|x| x.error_estimate),
            margin: r.margin,
            combined_error: r.combined_error,
            verdict,
            samples: r.lhs.samples,
        })?;
    }
    csv_string(w)
}

pub(super) fn sharpness_csv(rep: &SharpnessReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["case_id", "term", "phi_id", "quotient", "error"])?;
    for q in &rep.quotients {
        w.write_record([&rep.case_id, &rep.term, &q.phi_id, &q.quotient.to_string(), &q.error.to_string()])?;
    }
    csv_string(w)
}

/// Writes to a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, body: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub(super) fn deliver(cfg: &RunConfig, body: &str, out: &mut dyn Write) -> Result<()> {
    match &cfg.output {
        Some(p) => write_atomic(p, body),
        None => Ok(out.write_all(body.as_bytes())?),
    }
}

/// Six decimals with trailing zeros trimmed (one kept): `1.000000 → 1.0`.
pub fn format_cp(v: f64) -> String {
    let s = format!("{v:.6}");
    let t = s.trim_end_matches('0');
    if t.ends_with('.') {
        format!("{t}0")
    } else {
        t.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cp_formatting() {
        assert_eq!(format_cp(1.0), "1.0");
        assert_eq!(format_cp(0.99999999999), "1.0");
        assert_eq!(format_cp(0.1234), "0.1234");
        assert_eq!(format_cp(2.5), "2.5");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        write_atomic(&p, "a").unwrap();
        write_atomic(&p, "b").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "b");
    }
}
