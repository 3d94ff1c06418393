//! Elementary number theory over machine words.
//!
//! Everything here is generic over an unsigned word type ([`Word`]) so the
//! same routines serve `u32` and `u64` residues. Products are formed in the
//! next wider type, so no intermediate value overflows.

use std::fmt;

use num_integer::Integer;
use num_traits::{PrimInt, Unsigned};

use crate::error::{Error, Result};

/// An unsigned machine word usable as a modulus.
pub trait Word:
    PrimInt + Unsigned + Integer + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// `self * rhs mod modulus` without overflow.
    fn mul_mod(self, rhs: Self, modulus: Self) -> Self;

    fn from_u64(v: u64) -> Option<Self> {
        Self::from(v)
    }

    fn as_u64(self) -> u64 {
        // every implementor is at most 64 bits wide
        self.to_u64().unwrap()
    }
}

macro_rules! impl_word {
    ($($t:ty => $wide:ty),* $(,)?) => {
        $(
            impl Word for $t {
                #[inline]
                fn mul_mod(self, rhs: Self, modulus: Self) -> Self {
                    ((self as $wide * rhs as $wide) % modulus as $wide) as $t
                }
            }
        )*
    };
}

impl_word!(u8 => u16, u16 => u32, u32 => u64, u64 => u128);

/// An element of `Z_m`, always reduced: `0 <= value < modulus`, `modulus >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue<T: Word> {
    value: T,
    modulus: T,
}

impl<T: Word> Residue<T> {
    /// Reduces `value` modulo `modulus`.
    pub fn new(value: T, modulus: T) -> Result<Self> {
        if modulus < T::from_u64(2).unwrap() {
            return Err(Error::InvalidModulus(modulus.as_u64()));
        }
        Ok(Self {
            value: value % modulus,
            modulus,
        })
    }

    pub fn value(&self) -> T {
        self.value
    }

    pub fn modulus(&self) -> T {
        self.modulus
    }

    pub fn one(modulus: T) -> Result<Self> {
        Self::new(T::one(), modulus)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self {
            value: self.value.mul_mod(other.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn pow(&self, exp: u64) -> Self {
        mod_pow(*self, exp)
    }

    pub fn is_unit(&self) -> bool {
        self.value.gcd(&self.modulus) == T::one()
    }
}

impl<T: Word> fmt::Display for Residue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// `base^exp` by square-and-multiply.
pub fn mod_pow<T: Word>(base: Residue<T>, mut exp: u64) -> Residue<T> {
    let m = base.modulus;
    let mut acc = T::one() % m;
    let mut b = base.value;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.mul_mod(b, m);
        }
        b = b.mul_mod(b, m);
        exp >>= 1;
    }
    Residue {
        value: acc,
        modulus: m,
    }
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for every 64-bit input.
///
/// Small inputs go through trial division; the rest through Miller-Rabin
/// with the first twelve prime bases, which has no pseudoprimes below 2^64.
pub fn is_prime<T: Word>(u: T) -> bool {
    let n = u.as_u64();
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n == b {
            return true;
        }
        if n % b == 0 {
            return false;
        }
    }
    if n < 37 * 37 {
        return true;
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = mod_pow(
            Residue {
                value: a,
                modulus: n,
            },
            d,
        )
        .value;
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x.mul_mod(x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Smallest `d >= 1` with `a^d = 1`.
pub fn multiplicative_order<T: Word>(a: Residue<T>) -> Result<u64> {
    if !a.is_unit() {
        return Err(Error::NotAUnit {
            value: a.value.as_u64(),
            modulus: a.modulus.as_u64(),
        });
    }
    let phi = euler_phi(a.modulus.as_u64());
    let mut ord = phi;
    for (r, _) in factorize(phi) {
        while ord % r == 0 && mod_pow(a, ord / r).value == T::one() {
            ord /= r;
        }
    }
    Ok(ord)
}

fn has_full_order(g: u64, p: u64) -> bool {
    // p prime, so the group order is p - 1
    let res = Residue {
        value: g % p,
        modulus: p,
    };
    res.value != 0
        && prime_divisors(p - 1)
            .iter()
            .all(|&r| mod_pow(res, (p - 1) / r).value != 1)
}

fn check_odd_prime(name: &'static str, value: u64) -> Result<()> {
    if !is_prime(value) {
        return Err(Error::NotPrime { name, value });
    }
    if value == 2 {
        return Err(Error::NotOdd { name, value });
    }
    Ok(())
}

/// Smallest primitive root of the odd prime `p`.
pub fn primitive_root<T: Word>(p: T) -> Result<T> {
    let pv = p.as_u64();
    check_odd_prime("p", pv)?;
    let g = (2..pv)
        .find(|&g| has_full_order(g, pv))
        .expect("every prime has a primitive root");
    Ok(T::from_u64(g).unwrap())
}

/// Smallest `g >= 2` that is a primitive root of both `p` and `q`.
pub fn common_primitive_root<T: Word>(p: T, q: T) -> Result<T> {
    let (pv, qv) = (p.as_u64(), q.as_u64());
    check_odd_prime("p", pv)?;
    check_odd_prime("q", qv)?;
    if pv == qv {
        return Err(Error::EqualPrimes(pv));
    }
    let bound = pv
        .checked_mul(qv)
        .ok_or(Error::Overflow("p * q exceeds 64 bits"))?;
    let g = (2..bound)
        .find(|&g| has_full_order(g, pv) && has_full_order(g, qv))
        .expect("CRT guarantees a common primitive root below pq");
    Ok(T::from_u64(g).unwrap())
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// Chinese remaindering of two residues with coprime moduli.
pub fn crt_pair<T: Word>(r1: Residue<T>, r2: Residue<T>) -> Result<Residue<T>> {
    let (a1, m1) = (r1.value.as_u64(), r1.modulus.as_u64());
    let (a2, m2) = (r2.value.as_u64(), r2.modulus.as_u64());
    if m1.gcd(&m2) != 1 {
        return Err(Error::ModuliNotCoprime(m1, m2));
    }
    let product = r1
        .modulus
        .checked_mul(&r2.modulus)
        .ok_or(Error::Overflow("product of moduli"))?;
    let inv = mod_inverse(m1 % m2, m2).expect("coprime moduli");
    let diff = (a2 + m2 - a1 % m2) % m2;
    let t = diff.mul_mod(inv, m2);
    let value = a1 + m1 * t;
    Ok(Residue {
        value: T::from_u64(value).unwrap(),
        modulus: product,
    })
}
