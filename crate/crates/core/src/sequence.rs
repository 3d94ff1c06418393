//! One period of the characteristic sequence of `C1`.

use std::fmt;

use crate::cyclotomy::CyclotomicPartition;
use crate::gf2poly::BinaryPoly;

/// A binary sequence of period `N`, stored as one period, index-ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySequence {
    bits: Vec<bool>,
}

impl BinarySequence {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_ascii(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Self::from_bits)
    }

    pub fn period(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn to_ascii(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// Little-endian packing: bit `i` of the sequence is bit `i % 8` of byte `i / 8`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.bits.len().div_ceil(8)];
        for (i, _) in self.bits.iter().enumerate().filter(|(_, &b)| b) {
            out[i / 8] |= 1 << (i % 8);
        }
        out
    }

    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The first `len` terms of the periodic extension.
    pub fn tiled(&self, len: usize) -> Vec<bool> {
        self.bits.iter().copied().cycle().take(len).collect()
    }

    /// `S(x) = sum s_t x^t`, of degree below the period.
    pub fn support_poly(&self) -> BinaryPoly {
        BinaryPoly::from_bits(&self.bits)
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

/// `s_i = 1` iff `i` lies in `C1`.
pub fn generate(partition: &CyclotomicPartition) -> BinarySequence {
    let n = partition.params().modulus as usize;
    let mut bits = vec![false; n];
    for &t in partition.c1() {
        bits[t as usize] = true;
    }
    BinarySequence { bits }
}

/// Free-function form of [`BinarySequence::support_poly`].
pub fn support_poly(seq: &BinarySequence) -> BinaryPoly {
    seq.support_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomy::{build_partition, derive_params};
    use proptest::prelude::*;

    fn seq(p: u64, q: u64) -> BinarySequence {
        generate(&build_partition(&derive_params(p, q).unwrap()))
    }

    #[test]
    fn sequence_3_5() {
        let s = seq(3, 5);
        assert_eq!(s.to_ascii(), "001000111110010");
        assert_eq!(s.weight(), 7);
        assert_eq!(s.period(), 15);
        assert!(!s.bits()[0]);
        // bits 2,6,7 -> 0b1100_0100, bits 8,9,10,13 -> 0b0010_0111
        assert_eq!(s.to_hex(), "c427");
    }

    #[test]
    fn support_3_5() {
        let poly = seq(3, 5).support_poly();
        assert_eq!(poly.exponents(), vec![2, 6, 7, 8, 9, 10, 13]);
        assert_eq!(
            poly.to_string(),
            "x^2 + x^6 + x^7 + x^8 + x^9 + x^10 + x^13"
        );
    }

    #[test]
    fn support_edge_cases() {
        assert!(BinarySequence::from_bits(vec![false; 15])
            .support_poly()
            .is_zero());
        let mut bits = vec![false; 21];
        bits[0] = true;
        assert_eq!(
            BinarySequence::from_bits(bits).support_poly(),
            BinaryPoly::one()
        );
    }

    #[test]
    fn zero_bit_and_balance() {
        for &(p, q) in &[(3, 7), (5, 7), (7, 11), (5, 13), (5, 17), (7, 13)] {
            let s = seq(p, q);
            assert!(!s.bits()[0]);
            assert_eq!(s.weight() as u64, (p * q - 1) / 2);
        }
    }

    #[test]
    fn ascii_parse() {
        assert_eq!(BinarySequence::from_ascii("0110").unwrap().weight(), 2);
        assert!(BinarySequence::from_ascii("01x").is_none());
        assert_eq!(seq(3, 5).tiled(17)[15..], [false, false]);
    }

    proptest! {
        #[test]
        fn support_poly_round_trip(bits in proptest::collection::vec(any::<bool>(), 1..300)) {
            let s = BinarySequence::from_bits(bits.clone());
            let poly = s.support_poly();
            let back: Vec<bool> = (0..bits.len()).map(|i| poly.coeff(i)).collect();
            prop_assert_eq!(back, bits);
            prop_assert!(poly.degree() < crate::gf2poly::Degree::Finite(s.period()));
        }
    }
}
