//! JSON, CSV and plain-text renderings of analysis reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{AnalysisReport, ClaimId, LemmaVerdict, Status};
use crate::error::Error;

const CSV_FIXED: [&str; 8] = ["p", "q", "n", "N", "weight", "lc", "bound", "theorem_holds"];

impl AnalysisReport {
    /// Pretty JSON with fields in declaration order; stable across runs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn csv_header() -> Vec<String> {
        CSV_FIXED
            .iter()
            .map(|s| s.to_string())
            .chain(ClaimId::ALL.iter().map(|c| c.as_str().to_string()))
            .collect()
    }

    pub fn csv_record(&self) -> Vec<String> {
        let p = &self.params;
        let mut row = vec![
            p.p.to_string(),
            p.q.to_string(),
            p.n.to_string(),
            p.modulus.to_string(),
            self.weight.to_string(),
            self.lc_gcd.to_string(),
            self.theorem_bound.to_string(),
            self.theorem_holds.to_string(),
        ];
        row.extend(ClaimId::ALL.iter().map(|&c| {
            self.verdict(c)
                .map_or_else(|| "-".to_string(), |v| status_str(v.status).to_string())
        }));
        row
    }

    /// Human-readable summary.
    pub fn render_text(&self) -> String {
        let p = &self.params;
        let z = &self.zero_counts;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "p={} q={} N={} n={} (order {}) e={} g={} x={}",
            p.p,
            p.q,
            p.modulus,
            p.n,
            2 * p.n,
            p.e,
            p.g,
            p.x
        );
        let _ = writeln!(
            out,
            "weight               {} (balanced at {})",
            self.weight,
            p.half_period()
        );
        let _ = writeln!(out, "lc berlekamp-massey  {}", self.lc_bm);
        let _ = writeln!(out, "lc gcd               {}", self.lc_gcd);
        let _ = writeln!(out, "lc zero spectrum     {}", self.lc_spectrum);
        let _ = writeln!(
            out,
            "bound (pq-1)/2       {} ({})",
            self.theorem_bound,
            if self.theorem_holds {
                "holds"
            } else {
                "VIOLATED"
            }
        );
        let _ = writeln!(
            out,
            "zeros of S           {} (k=0: {}, P: {}, Q: {}, units: {})",
            z.total, z.k_zero, z.in_p, z.in_q, z.in_units
        );
        let _ = writeln!(out, "minimal polynomial   {}", self.minimal_poly);
        let _ = writeln!(out, "  hex                {}", self.minimal_poly.to_hex());
        out.push_str("claims\n");
        for v in &self.verdicts {
            out.push_str(&render_verdict(v));
        }
        out
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "Pass",
        Status::Fail => "Fail",
        Status::PassWithNote => "PassWithNote",
    }
}

pub fn render_verdict(v: &LemmaVerdict) -> String {
    let mut out = format!(
        "  {:<8} {:<13} {}\n",
        v.claim.as_str(),
        status_str(v.status),
        v.note
    );
    if v.readings.len() > 1 {
        for r in &v.readings {
            let _ = writeln!(
                out,
                "           {:<20} {:<5} {}/{} failed",
                r.reading,
                status_str(r.status),
                r.failures,
                r.checked
            );
        }
    }
    for w in v.counterexamples.iter().take(3) {
        let mut coords = Vec::new();
        for (name, val) in [("k", w.k), ("k2", w.k2), ("a", w.a), ("i", w.i), ("j", w.j)] {
            if let Some(x) = val {
                coords.push(format!("{name}={x}"));
            }
        }
        let _ = writeln!(out, "           e.g. {} {}", coords.join(" "), w.detail);
    }
    out
}

/// One entry of a sweep: a report, or the error that stopped that pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepEntry {
    Report(Box<AnalysisReport>),
    Failed { p: u64, q: u64, error: String },
}

impl SweepEntry {
    pub fn new(p: u64, q: u64, result: Result<AnalysisReport, Error>) -> Self {
        match result {
            Ok(r) => SweepEntry::Report(Box::new(r)),
            Err(e) => SweepEntry::Failed {
                p,
                q,
                error: e.to_string(),
            },
        }
    }
}

pub fn sweep_csv(entries: &[SweepEntry]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(AnalysisReport::csv_header())
        .expect("in-memory write");
    for e in entries {
        if let SweepEntry::Report(r) = e {
            w.write_record(r.csv_record()).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

pub fn sweep_text(entries: &[SweepEntry]) -> String {
    let mut out = format!(
        "{:>5} {:>5} {:>3} {:>7} {:>7} {:>7} {:>7}  claims\n",
        "p", "q", "n", "N", "weight", "lc", "bound"
    );
    for e in entries {
        match e {
            SweepEntry::Report(r) => {
                let claims: Vec<String> = r
                    .verdicts
                    .iter()
                    .filter(|v| v.status != Status::Pass)
                    .map(|v| format!("{}:{}", v.claim.as_str(), status_str(v.status)))
                    .collect();
                let _ = writeln!(
                    out,
                    "{:>5} {:>5} {:>3} {:>7} {:>7} {:>7} {:>7}  {}",
                    r.params.p,
                    r.params.q,
                    r.params.n,
                    r.params.modulus,
                    r.weight,
                    r.lc_gcd,
                    r.theorem_bound,
                    if claims.is_empty() {
                        "all pass".to_string()
                    } else {
                        claims.join(" ")
                    }
                );
            }
            SweepEntry::Failed { p, q, error } => {
                let _ = writeln!(out, "{p:>5} {q:>5}  error: {error}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::analyze;
    use super::*;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let r = analyze(5, 13).unwrap();
        let js = r.to_json();
        let back = AnalysisReport::from_json(&js).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), js);
    }

    #[test]
    fn json_top_level_fields() {
        let r = analyze(3, 5).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        let mut expected = vec![
            "params",
            "lc_bm",
            "lc_gcd",
            "lc_spectrum",
            "weight",
            "zero_counts",
            "minimal_poly",
            "verdicts",
            "theorem_bound",
            "theorem_holds",
        ];
        expected.sort_unstable();
        let mut keys = keys;
        keys.sort_unstable();
        assert_eq!(keys, expected);
        assert_eq!(v["params"]["N"], 15);
        assert!(v["minimal_poly"].is_array());
    }

    #[test]
    fn csv_rows() {
        let entries = vec![
            SweepEntry::new(3, 5, analyze(3, 5)),
            SweepEntry::new(4, 5, analyze(4, 5)),
        ];
        let s = sweep_csv(&entries);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("p,q,n,N,weight,lc,bound,theorem_holds,PQR"));
        assert!(lines[1].starts_with("3,5,1,15,7,"));
        assert!(sweep_text(&entries).contains("error: p must be an odd prime"));
    }
}
