use thiserror::Error;

/// Errors raised anywhere in the construction or analysis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{name} must be an odd prime (got {value})")]
    NotPrime { name: &'static str, value: u64 },

    #[error("{name} must be an odd prime (got {value})")]
    NotOdd { name: &'static str, value: u64 },

    #[error("p must be less than q (got p={p}, q={q})")]
    OrderViolation { p: u64, q: u64 },

    #[error("p and q must be distinct primes (got {0} twice)")]
    EqualPrimes(u64),

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },

    #[error("moduli {0} and {1} are not coprime")]
    ModuliNotCoprime(u64, u64),

    #[error("invalid modulus {0}")]
    InvalidModulus(u64),

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error("gcd of two zero polynomials is undefined")]
    BothZero,

    #[error("polynomial degree {degree} is not below the period {period}")]
    DegreeTooLarge { degree: usize, period: usize },

    #[error("class index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("inputs were not built from the same parameters")]
    MismatchedInputs,

    #[error(
        "linear complexity oracles disagree for (p,q)=({p},{q}): \
         berlekamp-massey={bm}, gcd={gcd}, spectrum={spectrum}"
    )]
    OracleDisagreement {
        p: u64,
        q: u64,
        bm: usize,
        gcd: usize,
        spectrum: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
