//! End-to-end runs of the `dhgc` binary.

use std::process::{Command, Output};

use dhgc::analyzer::{AnalysisReport, ClaimId, LemmaVerdict, SweepEntry};

fn dhgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dhgc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_json_round_trips() {
    let out = dhgc(&["analyze", "--p", "3", "--q", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let report = AnalysisReport::from_json(&text).unwrap();
    assert_eq!(report.params.modulus, 15);
    assert_eq!(report.to_json(), text.trim_end());
}

#[test]
fn generate_prints_one_period() {
    let out = dhgc(&["generate", "--p", "3", "--q", "5", "--emit-sequence"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "001000111110010");
}

#[test]
fn bad_parameters_exit_one() {
    let out = dhgc(&["analyze", "--p", "4", "--q", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p must be an odd prime"));
    assert_eq!(
        dhgc(&["analyze", "--p", "7", "--q", "5"]).status.code(),
        Some(1)
    );
    assert_eq!(dhgc(&["analyze", "--p", "3"]).status.code(), Some(1));
}

#[test]
fn failing_claim_exits_two() {
    let out = dhgc(&["verify", "--p", "7", "--q", "13", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let verdicts: Vec<LemmaVerdict> = serde_json::from_str(&stdout(&out)).unwrap();
    let s1 = verdicts.iter().find(|v| v.claim == ClaimId::S1).unwrap();
    assert!(!s1.counterexamples.is_empty());
}

#[test]
fn sweep_from_pairs_file() {
    let path = std::env::temp_dir().join(format!("dhgc-pairs-{}.txt", std::process::id()));
    std::fs::write(&path, "# pairs\n3 5\n4 5\n5 13\n").unwrap();
    let out = dhgc(&[
        "sweep",
        "--pairs-file",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(1));
    let entries: Vec<SweepEntry> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(entries.len(), 3);
    assert!(matches!(&entries[1], SweepEntry::Failed { p: 4, q: 5, .. }));
    assert!(matches!(&entries[2], SweepEntry::Report(r) if r.params.n == 2));
}

#[test]
fn sweep_csv_has_one_row_per_pair() {
    let out = dhgc(&["sweep", "--max-n", "100", "--format", "csv"]);
    // (7,13) is in range and fails S1
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    let prime = |v: u64| v > 1 && (2..v).all(|d| v % d != 0);
    let pairs = (3..=33u64)
        .flat_map(|p| (p + 1..=100 / p).map(move |q| (p, q)))
        .filter(|&(p, q)| prime(p) && prime(q))
        .count();
    assert_eq!(lines.len(), 1 + pairs);
    assert!(lines
        .iter()
        .any(|l| l.starts_with("7,13,3,91,45,79,45,true,")));
    assert!(lines[0].starts_with("p,q,n,N,weight,lc,bound,theorem_holds"));
    assert!(lines[1].starts_with("3,5,1,15,7,"));
}
