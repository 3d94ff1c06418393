//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on parameter or usage errors, 2 when the
//! linear complexity oracles disagree or a must-pass claim fails.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analyzer::{
    analyze, pairs_up_to, sweep, sweep_csv, sweep_text, AnalysisReport, SweepEntry,
};
use crate::cyclotomy::{build_partition, derive_params, Params};
use crate::error::Error;
use crate::sequence::generate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARAM: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Full report for one pair
    Analyze,
    /// Reports for many pairs (from --pairs-file or --max-n)
    Sweep,
    /// Claim verdicts for one pair
    Verify,
    /// One period of the sequence
    Generate,
}

#[derive(Debug, Parser)]
#[command(
    name = "dhgc",
    version,
    about = "Ding-Helleseth generalized cyclotomic sequences and their linear complexity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Smaller odd prime
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Larger odd prime
    #[arg(long, global = true)]
    q: Option<u64>,
    /// File with one `p q` pair per line; `#` starts a comment
    #[arg(long, global = true)]
    pairs_file: Option<PathBuf>,
    /// Sweep every odd prime pair p < q with pq <= B
    #[arg(long = "max-n", value_name = "B", global = true)]
    max_n: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Print the sequence bits
    #[arg(long, global = true)]
    emit_sequence: bool,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

/// Validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub command: Command,
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub pairs_file: Option<PathBuf>,
    pub max_n: Option<u64>,
    pub format: Format,
    pub emit_sequence: bool,
    pub output: Option<PathBuf>,
}

impl CliConfig {
    fn from_cli(cli: Cli) -> Result<Self, String> {
        let config = CliConfig {
            command: cli.command,
            p: cli.p,
            q: cli.q,
            pairs_file: cli.pairs_file,
            max_n: cli.max_n,
            format: cli.format,
            emit_sequence: cli.emit_sequence,
            output: cli.output,
        };
        match config.command {
            Command::Analyze | Command::Verify | Command::Generate => {
                if config.p.is_none() || config.q.is_none() {
                    return Err("this command requires --p and --q".into());
                }
            }
            Command::Sweep => {
                if config.pairs_file.is_none() && config.max_n.is_none() {
                    return Err("sweep requires --pairs-file or --max-n".into());
                }
            }
        }
        Ok(config)
    }

    fn pair(&self) -> (u64, u64) {
        (self.p.expect("validated"), self.q.expect("validated"))
    }
}

/// Parses `p q` lines; blank lines and `#` comments are skipped.
pub fn parse_pairs(text: &str) -> Result<Vec<(u64, u64)>, String> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed = match fields.as_slice() {
            [a, b] => a.parse::<u64>().ok().zip(b.parse::<u64>().ok()),
            _ => None,
        };
        match parsed {
            Some(pair) => out.push(pair),
            None => {
                return Err(format!(
                    "line {}: expected `p q`, got `{}`",
                    lineno + 1,
                    raw.trim()
                ))
            }
        }
    }
    Ok(out)
}

fn exit_for_error(e: &Error) -> i32 {
    match e {
        Error::OracleDisagreement { .. } => EXIT_FAILURE,
        _ => EXIT_PARAM,
    }
}

fn exit_for_report(r: &AnalysisReport) -> i32 {
    if r.has_hard_failure() {
        EXIT_FAILURE
    } else {
        EXIT_OK
    }
}

fn emit(config: &CliConfig, body: &str) -> Result<(), String> {
    match &config.output {
        Some(path) => write_file(path, body),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), String> {
    fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn single_csv(header: Vec<String>, record: Vec<String>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    w.write_record(record).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

#[derive(Serialize)]
struct GeneratedSequence<'a> {
    params: &'a Params,
    period: usize,
    weight: usize,
    bits: String,
    hex: String,
    support: Vec<usize>,
}

fn run_generate(config: &CliConfig) -> Result<i32, (i32, String)> {
    let (p, q) = config.pair();
    let params = derive_params(p, q).map_err(|e| (exit_for_error(&e), e.to_string()))?;
    let seq = generate(&build_partition(&params));
    let body = if config.emit_sequence && config.format == Format::Text {
        seq.to_ascii()
    } else {
        match config.format {
            Format::Json => serde_json::to_string_pretty(&GeneratedSequence {
                params: &params,
                period: seq.period(),
                weight: seq.weight(),
                bits: seq.to_ascii(),
                hex: seq.to_hex(),
                support: seq.support_poly().exponents(),
            })
            .expect("serializes"),
            Format::Csv => single_csv(
                ["p", "q", "N", "weight", "bits", "hex"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                vec![
                    p.to_string(),
                    q.to_string(),
                    params.modulus.to_string(),
                    seq.weight().to_string(),
                    seq.to_ascii(),
                    seq.to_hex(),
                ],
            ),
            Format::Text => format!(
                "p={p} q={q} N={} weight={}\nbits {}\nhex  {}\nS(x) {}",
                params.modulus,
                seq.weight(),
                seq.to_ascii(),
                seq.to_hex(),
                seq.support_poly()
            ),
        }
    };
    emit(config, &with_newline(body)).map_err(|e| (EXIT_PARAM, e))?;
    Ok(EXIT_OK)
}

fn run_analyze(config: &CliConfig, verdicts_only: bool) -> Result<i32, (i32, String)> {
    let (p, q) = config.pair();
    let report = analyze(p, q).map_err(|e| (exit_for_error(&e), e.to_string()))?;
    let body = match (config.format, verdicts_only) {
        (Format::Json, false) => report.to_json(),
        (Format::Json, true) => serde_json::to_string_pretty(&report.verdicts).expect("serializes"),
        (Format::Csv, false) => single_csv(AnalysisReport::csv_header(), report.csv_record()),
        (Format::Csv, true) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["claim", "status", "counterexamples", "note"])
                .expect("in-memory write");
            for v in &report.verdicts {
                w.write_record([
                    v.claim.as_str().to_string(),
                    format!("{:?}", v.status),
                    v.counterexamples.len().to_string(),
                    v.note.clone(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
        }
        (Format::Text, false) => {
            let mut s = report.render_text();
            if config.emit_sequence {
                let seq = generate(&build_partition(&report.params));
                s.push_str(&format!(
                    "sequence {}\nhex      {}\n",
                    seq.to_ascii(),
                    seq.to_hex()
                ));
            }
            s
        }
        (Format::Text, true) => report
            .verdicts
            .iter()
            .map(crate::analyzer::render_verdict)
            .collect(),
    };
    emit(config, &with_newline(body)).map_err(|e| (EXIT_PARAM, e))?;
    Ok(exit_for_report(&report))
}

fn run_sweep(config: &CliConfig) -> Result<i32, (i32, String)> {
    let mut pairs = Vec::new();
    if let Some(path) = &config.pairs_file {
        let text = fs::read_to_string(path)
            .map_err(|e| (EXIT_PARAM, format!("cannot read {}: {e}", path.display())))?;
        pairs.extend(parse_pairs(&text).map_err(|e| (EXIT_PARAM, e))?);
    }
    if let Some(bound) = config.max_n {
        pairs.extend(pairs_up_to(bound));
    }
    let results = sweep(&pairs);

    let mut status = EXIT_OK;
    for (&(p, q), r) in pairs.iter().zip(&results) {
        let code = match r {
            Ok(report) => exit_for_report(report),
            Err(e) => {
                eprintln!("({p},{q}): {e}");
                exit_for_error(e)
            }
        };
        status = status.max(code);
    }
    let entries: Vec<SweepEntry> = pairs
        .iter()
        .zip(results)
        .map(|(&(p, q), r)| SweepEntry::new(p, q, r))
        .collect();

    let body = match config.format {
        Format::Json => serde_json::to_string_pretty(&entries).expect("serializes"),
        Format::Csv => sweep_csv(&entries),
        Format::Text => sweep_text(&entries),
    };
    emit(config, &with_newline(body)).map_err(|e| (EXIT_PARAM, e))?;
    Ok(status)
}

/// Executes a validated configuration and returns the process exit status.
pub fn run(config: &CliConfig) -> i32 {
    let outcome = match config.command {
        Command::Analyze => run_analyze(config, false),
        Command::Verify => run_analyze(config, true),
        Command::Generate => run_generate(config),
        Command::Sweep => run_sweep(config),
    };
    match outcome {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

/// Parses arguments (including the program name) and runs.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARAM } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match CliConfig::from_cli(cli) {
        Ok(config) => run(&config),
        Err(msg) => {
            eprintln!("error: {msg}");
            eprintln!("{}", Cli::command().render_usage());
            EXIT_PARAM
        }
    }
}
