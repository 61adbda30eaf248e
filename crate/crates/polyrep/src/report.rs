//! Verification reports: the ordered findings of a set of suites, with
//! presentation hash and summary counts. Output is deterministic unless
//! timings are requested.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::algebras::Presentation;
use crate::findings::{run_suite, Finding, Ranges, Suite, Verdict, VerifyError};

/// Version of the report layout; bumped whenever a field changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    #[serde(rename = "MATCH")]
    pub matched: usize,
    #[serde(rename = "MISMATCH")]
    pub mismatched: usize,
    #[serde(rename = "NOT_APPLICABLE")]
    pub not_applicable: usize,
}

impl Summary {
    fn of(findings: &[Finding]) -> Summary {
        let mut s = Summary { total: findings.len(), ..Summary::default() };
        for f in findings {
            match f.verdict {
                Verdict::Match => s.matched += 1,
                Verdict::Mismatch => s.mismatched += 1,
                Verdict::NotApplicable => s.not_applicable += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema: u32,
    pub algebra: String,
    pub presentation_hash: String,
    pub suites: Vec<Suite>,
    pub ranges: Ranges,
    pub summary: Summary,
    /// Seconds per suite; present only when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
    pub findings: Vec<Finding>,
}

/// Runs `suites` (in the given order) on `p`.
pub fn verify(p: &Arc<Presentation>, suites: &[Suite], ranges: &Ranges, timings: bool) -> Result<Report, VerifyError> {
    let mut findings = Vec::new();
    let mut times = BTreeMap::new();
    for &s in suites {
        let t = Instant::now();
        findings.extend(run_suite(p, s, ranges)?);
        times.insert(s.name().to_string(), t.elapsed().as_secs_f64());
    }
    Ok(Report {
        tool: "polyrep",
        version: env!("CARGO_PKG_VERSION"),
        schema: SCHEMA_VERSION,
        algebra: p.name.clone(),
        presentation_hash: p.hash(),
        suites: suites.to_vec(),
        ranges: ranges.clone(),
        summary: Summary::of(&findings),
        timings: timings.then_some(times),
        findings,
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per finding, then the summary.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} report for {} ({})\n", self.tool, self.version, self.algebra, self.presentation_hash);
        for f in &self.findings {
            out.push_str(&format!("{:<14} {}\n", f.verdict.to_string(), f.id));
            if f.verdict != Verdict::Match {
                out.push_str(&format!("    engine: {}\n    claimed:  {}\n", f.engine, f.claimed));
            }
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} findings: {} MATCH, {} MISMATCH, {} NOT_APPLICABLE\n",
            s.total, s.matched, s.mismatched, s.not_applicable
        ));
        if let Some(t) = &self.timings {
            for (k, v) in t {
                out.push_str(&format!("time {k}: {v:.3}s\n"));
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "algebra", "claim", "indices", "verdict", "engine", "claimed"]).expect("csv write");
        for f in &self.findings {
            let v = f.verdict.to_string();
            w.write_record([&f.id, &f.algebra, &f.claim, &f.indices, &v, &f.engine, &f.claimed]).expect("csv write");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
    }
}
