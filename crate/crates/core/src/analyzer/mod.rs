//! End-to-end analysis of one `(p, q)`: the three linear complexity oracles,
//! the claim checks, and the report they feed.

mod claims;
mod report;

pub use claims::{verify_claim, Verifier};
pub use report::{render_verdict, sweep_csv, sweep_text, SweepEntry};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomy::{build_partition, derive_params, Params};
use crate::error::{Error, Result};
use crate::gf2m::make_field;
use crate::gf2poly::{berlekamp_massey, linear_complexity_gcd, minimal_polynomial, BinaryPoly};
use crate::numtheory::is_prime;
use crate::sequence::generate;

/// The checkable statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ClaimId {
    /// Multiples of `p` (resp. `q`) act on `P` and `Q`.
    Pqr,
    /// Units shift the class indices of `P_j`, `Q_j`, `D_j`.
    Di,
    /// Character sums over `P`, `Q`, `Z_N^*` at `alpha` are all 1.
    Pqz,
    /// Paired units have `S(alpha^k1) + S(alpha^k2) = 1`.
    Zn,
    /// At most `(p-1)(q-1)/2` unit zeros of `S`.
    Bspq,
    /// Class sums `sum_{D_j} alpha^(k i)` for `k` in `P` and `Q`.
    Pq,
    /// Closed forms of `S(alpha^k)` for `k` in `P` and `Q`.
    Spq,
    /// Zero counts of `T_a^(p)` over `P` and `Q`.
    St,
    /// The value of `S(1)`.
    S1,
    /// `LC >= (pq - 1)/2`.
    Theorem,
}

impl ClaimId {
    pub const ALL: [ClaimId; 10] = [
        ClaimId::Pqr,
        ClaimId::Di,
        ClaimId::Pqz,
        ClaimId::Zn,
        ClaimId::Bspq,
        ClaimId::Pq,
        ClaimId::Spq,
        ClaimId::St,
        ClaimId::S1,
        ClaimId::Theorem,
    ];

    /// A failure of one of these is a hard failure of the run.
    pub fn must_pass(self) -> bool {
        !matches!(self, ClaimId::Pq | ClaimId::Spq | ClaimId::St)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Pqr => "PQR",
            ClaimId::Di => "DI",
            ClaimId::Pqz => "PQZ",
            ClaimId::Zn => "ZN",
            ClaimId::Bspq => "BSPQ",
            ClaimId::Pq => "PQ",
            ClaimId::Spq => "SPQ",
            ClaimId::St => "ST",
            ClaimId::S1 => "S1",
            ClaimId::Theorem => "THEOREM",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    PassWithNote,
}

/// One failing instance of a claim.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k2: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<u64>,
    /// Observed field values, hex encoded.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<String>,
    pub detail: String,
}

/// A named count, optionally with the bound it is held against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub label: String,
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
}

/// Verdict of one reading of a claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reading {
    pub reading: String,
    pub status: Status,
    pub checked: u64,
    pub failures: u64,
    pub counterexamples: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tallies: Vec<Tally>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaVerdict {
    pub claim: ClaimId,
    pub status: Status,
    pub counterexamples: Vec<Witness>,
    pub note: String,
    pub readings: Vec<Reading>,
}

impl LemmaVerdict {
    pub fn is_hard_failure(&self) -> bool {
        self.claim.must_pass() && self.status == Status::Fail
    }
}

/// Zero tallies of `S(alpha^k)` per cell of `Z_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCounts {
    pub k_zero: u64,
    pub in_p: u64,
    pub in_q: u64,
    pub in_units: u64,
    pub total: u64,
    pub zero_set: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub params: Params,
    pub lc_bm: u64,
    pub lc_gcd: u64,
    pub lc_spectrum: u64,
    pub weight: u64,
    pub zero_counts: ZeroCounts,
    pub minimal_poly: BinaryPoly,
    pub verdicts: Vec<LemmaVerdict>,
    pub theorem_bound: u64,
    pub theorem_holds: bool,
}

impl AnalysisReport {
    pub fn verdict(&self, claim: ClaimId) -> Option<&LemmaVerdict> {
        self.verdicts.iter().find(|v| v.claim == claim)
    }

    /// A must-pass claim failed or the oracles disagree.
    pub fn has_hard_failure(&self) -> bool {
        self.verdicts.iter().any(LemmaVerdict::is_hard_failure)
            || self.lc_bm != self.lc_gcd
            || self.lc_gcd != self.lc_spectrum
    }
}

/// Runs the whole pipeline for one pair.
pub fn analyze(p: u64, q: u64) -> Result<AnalysisReport> {
    let params = derive_params(p, q)?;
    let partition = build_partition(&params);
    let seq = generate(&partition);
    let period = seq.period();

    let lc_bm = berlekamp_massey(&seq.tiled(2 * period)).complexity;
    let lc_gcd = linear_complexity_gcd(&seq);
    let ctx = make_field(params.modulus)?;
    let verifier = Verifier::new(&params, &partition, &ctx)?;
    let spectrum = verifier.spectrum();
    let lc_spectrum = spectrum.linear_complexity as usize;
    if lc_bm != lc_gcd || lc_gcd != lc_spectrum {
        return Err(Error::OracleDisagreement {
            p,
            q,
            bm: lc_bm,
            gcd: lc_gcd,
            spectrum: lc_spectrum,
        });
    }

    let minimal_poly = minimal_polynomial(&seq.support_poly(), period)?;
    let verdicts = ClaimId::ALL.iter().map(|&c| verifier.verify(c)).collect();
    let theorem_bound = params.half_period();

    Ok(AnalysisReport {
        params,
        lc_bm: lc_bm as u64,
        lc_gcd: lc_gcd as u64,
        lc_spectrum: lc_spectrum as u64,
        weight: seq.weight() as u64,
        zero_counts: ZeroCounts {
            k_zero: spectrum.at_zero,
            in_p: spectrum.in_p,
            in_q: spectrum.in_q,
            in_units: spectrum.in_units,
            total: spectrum.total,
            zero_set: spectrum.zero_set,
        },
        minimal_poly,
        verdicts,
        theorem_bound,
        theorem_holds: lc_gcd as u64 >= theorem_bound,
    })
}

/// Independent reports for each pair, in input order.
pub fn sweep(pairs: &[(u64, u64)]) -> Vec<Result<AnalysisReport>> {
    pairs.par_iter().map(|&(p, q)| analyze(p, q)).collect()
}

/// All odd prime pairs `p < q` with `pq <= bound`, ordered by `p` then `q`.
pub fn pairs_up_to(bound: u64) -> Vec<(u64, u64)> {
    let primes: Vec<u64> = (3..=bound / 3).filter(|&v| is_prime(v)).collect();
    let mut out = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            if p * q > bound {
                break;
            }
            out.push((p, q));
        }
    }
    out
}
