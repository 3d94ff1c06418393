//! Ding-Helleseth generalized cyclotomic binary sequences of any order.
//!
//! The crate builds the sequence for an odd prime pair `p < q`, computes its
//! linear complexity three independent ways (Berlekamp-Massey synthesis, the
//! gcd with `x^N - 1`, and the zero count of `S(alpha^k)` in the splitting
//! field), and checks a battery of structural and spectral identities.
//!
//! ```
//! let report = dhgc::analyze(3, 5).unwrap();
//! assert_eq!(report.weight, 7);
//! assert!(report.lc_gcd >= report.theorem_bound);
//! ```

pub mod analyzer;
pub mod cli;
pub mod cyclotomy;
pub mod error;
pub mod gf2m;
pub mod gf2poly;
pub mod numtheory;
pub mod sequence;

pub use analyzer::{analyze, sweep, AnalysisReport, ClaimId, LemmaVerdict, Status};
pub use cyclotomy::{build_partition, derive_params, CyclotomicPartition, Location, Params};
pub use error::{Error, Result};
pub use gf2m::{make_field, FieldCtx, FieldElem};
pub use gf2poly::{berlekamp_massey, BinaryPoly, Degree, LfsrSynthesis};
pub use sequence::{generate, BinarySequence};

/// Residues with 64-bit moduli; what the construction itself uses.
pub type Residue64 = numtheory::Residue<u64>;
/// Residues with 32-bit moduli.
pub type Residue32 = numtheory::Residue<u32>;
