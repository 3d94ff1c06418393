//! Dense bit-packed polynomials over GF(2) and the sequence-domain linear
//! complexity oracles.

mod lfsr;

pub use lfsr::{berlekamp_massey, LfsrSynthesis};

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sequence::BinarySequence;

const BITS: usize = 64;

/// Degree of a polynomial; the zero polynomial has degree `NegativeInfinity`,
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegativeInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegativeInfinity => None,
        }
    }
}

/// A polynomial over GF(2). Coefficient of `x^i` is bit `i % 64` of limb
/// `i / 64`; there are never zero limbs above the leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPoly {
    limbs: Vec<u64>,
}

impl BinaryPoly {
    pub fn zero() -> Self {
        Self { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { limbs: vec![1] }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut p = Self {
            limbs: vec![0; k / BITS + 1],
        };
        p.limbs[k / BITS] = 1 << (k % BITS);
        p
    }

    pub fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut p = Self { limbs };
        p.normalize();
        p
    }

    /// Low 64 coefficients packed in an integer.
    pub fn from_u64(v: u64) -> Self {
        Self::from_limbs(vec![v])
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut limbs = vec![0u64; bits.len().div_ceil(BITS)];
        for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            limbs[i / BITS] |= 1 << (i % BITS);
        }
        Self::from_limbs(limbs)
    }

    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    /// `x^n - 1` (equal to `x^n + 1` over GF(2)).
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.flip(0);
        p
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    pub fn degree(&self) -> Degree {
        match self.limbs.last() {
            None => Degree::NegativeInfinity,
            Some(&top) => Degree::Finite(
                (self.limbs.len() - 1) * BITS + (BITS - 1 - top.leading_zeros() as usize),
            ),
        }
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / BITS)
            .is_some_and(|w| (w >> (i % BITS)) & 1 == 1)
    }

    /// Toggles the coefficient of `x^i`.
    pub fn flip(&mut self, i: usize) {
        if self.limbs.len() <= i / BITS {
            self.limbs.resize(i / BITS + 1, 0);
        }
        self.limbs[i / BITS] ^= 1 << (i % BITS);
        self.normalize();
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (i, &w) in self.limbs.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(i * BITS + b);
                w &= w - 1;
            }
        }
        out
    }

    /// Little-endian hex: bit `i` of byte `i / 8` is the coefficient of `x^i`.
    pub fn to_hex(&self) -> String {
        let Some(d) = self.degree().finite() else {
            return String::new();
        };
        let nbytes = d / 8 + 1;
        self.limbs
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(nbytes)
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// `self ^= other * x^shift`.
    pub fn add_shifted(&mut self, other: &Self, shift: usize) {
        if other.is_zero() {
            return;
        }
        let word_shift = shift / BITS;
        let bit_shift = shift % BITS;
        let needed = other.limbs.len() + word_shift + 1;
        if self.limbs.len() < needed {
            self.limbs.resize(needed, 0);
        }
        if bit_shift == 0 {
            for (i, &w) in other.limbs.iter().enumerate() {
                self.limbs[i + word_shift] ^= w;
            }
        } else {
            for (i, &w) in other.limbs.iter().enumerate() {
                self.limbs[i + word_shift] ^= w << bit_shift;
                self.limbs[i + word_shift + 1] ^= w >> (BITS - bit_shift);
            }
        }
        self.normalize();
    }

    pub fn shl(&self, shift: usize) -> Self {
        let mut out = Self::zero();
        out.add_shifted(self, shift);
        out
    }

    /// Carry-less product by shift-and-xor over the set bits of the shorter operand.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self {
            limbs: vec![0; a.limbs.len() + b.limbs.len() + 1],
        };
        for e in a.exponents() {
            let (ws, bs) = (e / BITS, e % BITS);
            if bs == 0 {
                for (i, &w) in b.limbs.iter().enumerate() {
                    out.limbs[i + ws] ^= w;
                }
            } else {
                for (i, &w) in b.limbs.iter().enumerate() {
                    out.limbs[i + ws] ^= w << bs;
                    out.limbs[i + ws + 1] ^= w >> (BITS - bs);
                }
            }
        }
        out.normalize();
        out
    }

    pub fn square(&self) -> Self {
        let mut out = Self {
            limbs: vec![0; 2 * self.limbs.len()],
        };
        for (i, &w) in self.limbs.iter().enumerate() {
            out.limbs[2 * i] = spread(w as u32);
            out.limbs[2 * i + 1] = spread((w >> 32) as u32);
        }
        out.normalize();
        out
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor
            .degree()
            .finite()
            .expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Degree::Finite(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            quot.flip(dr - dd);
            rem.add_shifted(divisor, dr - dd);
        }
        (quot, rem)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        let dd = divisor
            .degree()
            .finite()
            .expect("division by the zero polynomial");
        let mut rem = self.clone();
        while let Degree::Finite(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            rem.add_shifted(divisor, dr - dd);
        }
        rem
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Evaluation at 1, i.e. the parity of the weight.
    pub fn eval_at_one(&self) -> bool {
        self.weight() % 2 == 1
    }
}

/// Interleaves the bits of `v` with zeros (squaring over GF(2)).
fn spread(v: u32) -> u64 {
    let mut x = v as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

impl Add for &BinaryPoly {
    type Output = BinaryPoly;

    fn add(self, rhs: Self) -> BinaryPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&BinaryPoly> for BinaryPoly {
    fn add_assign(&mut self, rhs: &BinaryPoly) {
        self.add_shifted(rhs, 0);
    }
}

impl fmt::Display for BinaryPoly {
    /// Ascending exponent list, e.g. `1 + x^2 + x^13`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPoly({self})")
    }
}

impl Serialize for BinaryPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exponents().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let exps = Vec::<usize>::deserialize(d)?;
        Ok(Self::from_exponents(exps))
    }
}

/// Greatest common divisor by the Euclidean algorithm.
pub fn poly_gcd(a: &BinaryPoly, b: &BinaryPoly) -> Result<BinaryPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    Ok(a)
}

/// `m(x) = (x^N - 1) / gcd(S(x), x^N - 1)`.
pub fn minimal_polynomial(support: &BinaryPoly, period: usize) -> Result<BinaryPoly> {
    if let Degree::Finite(d) = support.degree() {
        if d >= period {
            return Err(Error::DegreeTooLarge { degree: d, period });
        }
    }
    let modulus = BinaryPoly::x_pow_minus_one(period);
    let g = poly_gcd(support, &modulus)?;
    let (quot, rem) = modulus.div_rem(&g);
    debug_assert!(rem.is_zero());
    Ok(quot)
}

/// `N - deg gcd(x^N - 1, S(x))`; zero for the all-zero sequence.
pub fn linear_complexity_gcd(seq: &BinarySequence) -> usize {
    let support = seq.support_poly();
    if support.is_zero() {
        return 0;
    }
    let g =
        poly_gcd(&support, &BinaryPoly::x_pow_minus_one(seq.period())).expect("x^N - 1 is nonzero");
    seq.period() - g.degree().finite().expect("gcd is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(exps: &[usize]) -> BinaryPoly {
        BinaryPoly::from_exponents(exps.iter().copied())
    }

    #[test]
    fn degree_of_zero_is_distinct() {
        assert_eq!(BinaryPoly::zero().degree(), Degree::NegativeInfinity);
        assert_eq!(BinaryPoly::one().degree(), Degree::Finite(0));
        assert!(Degree::NegativeInfinity < Degree::Finite(0));
        assert_eq!(BinaryPoly::monomial(200).degree(), Degree::Finite(200));
    }

    #[test]
    fn normalization() {
        let a = BinaryPoly::from_limbs(vec![5, 0, 0]);
        assert_eq!(a.limbs(), &[5]);
        let mut b = BinaryPoly::monomial(130);
        b.flip(130);
        assert!(b.is_zero());
        assert!(b.limbs().is_empty());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[2, 0]), &p(&[1, 0])).unwrap(), p(&[1, 0]));
        let f = p(&[5, 3, 0]);
        assert_eq!(poly_gcd(&f, &BinaryPoly::zero()).unwrap(), f);
        assert_eq!(poly_gcd(&BinaryPoly::zero(), &f).unwrap(), f);
        assert_eq!(
            poly_gcd(&p(&[4, 1, 0]), &p(&[2, 1])).unwrap(),
            BinaryPoly::one()
        );
        assert_eq!(
            poly_gcd(&BinaryPoly::zero(), &BinaryPoly::zero()),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn minimal_polynomial_examples() {
        let all_ones = p(&(0..15).collect::<Vec<_>>());
        assert_eq!(minimal_polynomial(&all_ones, 15).unwrap(), p(&[1, 0]));
        assert_eq!(
            minimal_polynomial(&BinaryPoly::zero(), 15).unwrap(),
            BinaryPoly::one()
        );
        assert_eq!(
            minimal_polynomial(&BinaryPoly::monomial(15), 15),
            Err(Error::DegreeTooLarge {
                degree: 15,
                period: 15
            })
        );
    }

    #[test]
    fn lc_gcd_trivial() {
        assert_eq!(
            linear_complexity_gcd(&BinarySequence::from_bits(vec![false; 15])),
            0
        );
        assert_eq!(
            linear_complexity_gcd(&BinarySequence::from_bits(vec![true; 15])),
            1
        );
    }

    #[test]
    fn display_and_hex() {
        assert_eq!(p(&[0, 2, 13]).to_string(), "1 + x^2 + x^13");
        assert_eq!(p(&[1]).to_string(), "x");
        assert_eq!(BinaryPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, 2, 13]).to_hex(), "0520");
        assert_eq!(p(&[64]).to_hex(), "000000000000000001");
    }

    #[test]
    fn serde_as_exponents() {
        let a = p(&[0, 2, 70]);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, "[0,2,70]");
        assert_eq!(serde_json::from_str::<BinaryPoly>(&js).unwrap(), a);
    }

    fn arb_poly() -> impl Strategy<Value = BinaryPoly> {
        proptest::collection::vec(any::<u64>(), 0..4).prop_map(BinaryPoly::from_limbs)
    }

    proptest! {
        #[test]
        fn division_identity(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert!(r.degree() < b.degree());
            prop_assert_eq!(&q.mul(&b) + &r, a);
        }

        #[test]
        fn square_matches_mul(a in arb_poly()) {
            prop_assert_eq!(a.square(), a.mul(&a));
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            let (ac, bc) = (a.mul(&c), b.mul(&c));
            let g = poly_gcd(&ac, &bc).unwrap();
            prop_assert!(g.divides(&ac) && g.divides(&bc));
            prop_assert!(c.divides(&g));
        }

        #[test]
        fn minimal_polynomial_divides_modulus(bits in proptest::collection::vec(any::<bool>(), 1..200)) {
            let n = bits.len() | 1;
            let s = BinaryPoly::from_bits(&bits[..bits.len().min(n)]);
            let m = minimal_polynomial(&s, n).unwrap();
            prop_assert!(m.divides(&BinaryPoly::x_pow_minus_one(n)));
        }
    }
}
