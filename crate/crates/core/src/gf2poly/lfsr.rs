//! Berlekamp-Massey synthesis of the shortest LFSR generating a bit string.

use super::{BinaryPoly, BITS};

/// Shortest linear recurrence `s_j = c_1 s_{j-1} + ... + c_L s_{j-L}` found
/// for an input string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfsrSynthesis {
    /// The linear complexity `L`.
    pub complexity: usize,
    /// `1 + c_1 x + ... + c_L x^L`.
    pub connection: BinaryPoly,
}

impl LfsrSynthesis {
    /// Checks the recurrence at every index `L <= j < bits.len()`.
    pub fn generates(&self, bits: &[bool]) -> bool {
        let taps = self.connection.exponents();
        (self.complexity..bits.len()).all(|j| {
            let acc = taps
                .iter()
                .filter(|&&i| i <= j)
                .fold(false, |acc, &i| acc ^ bits[j - i]);
            !acc
        })
    }
}

/// 64 bits of `packed` starting at `offset`, zero past the end.
#[inline]
fn window(packed: &[u64], offset: usize) -> u64 {
    let (w, b) = (offset / BITS, offset % BITS);
    let lo = packed.get(w).copied().unwrap_or(0);
    if b == 0 {
        return lo;
    }
    let hi = packed.get(w + 1).copied().unwrap_or(0);
    (lo >> b) | (hi << (BITS - b))
}

pub fn berlekamp_massey(bits: &[bool]) -> LfsrSynthesis {
    let len = bits.len();
    // Reversed and packed, so the discrepancy sum over c_i * s_{j-i} is a
    // word-wise AND against a contiguous window.
    let mut rev = vec![0u64; len.div_ceil(BITS)];
    for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
        let r = len - 1 - i;
        rev[r / BITS] |= 1 << (r % BITS);
    }

    let mut conn = BinaryPoly::one();
    let mut prev = BinaryPoly::one();
    let mut complexity = 0usize;
    let mut last_change: isize = -1;

    for j in 0..len {
        let base = len - 1 - j;
        let parity = conn.limbs().iter().enumerate().fold(0u32, |acc, (w, &c)| {
            acc ^ (c & window(&rev, base + w * BITS)).count_ones()
        });
        if parity & 1 == 0 {
            continue;
        }
        let shift = (j as isize - last_change) as usize;
        if 2 * complexity <= j {
            let snapshot = conn.clone();
            conn.add_shifted(&prev, shift);
            complexity = j + 1 - complexity;
            last_change = j as isize;
            prev = snapshot;
        } else {
            conn.add_shifted(&prev, shift);
        }
    }

    LfsrSynthesis {
        complexity,
        connection: conn,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn trivial_inputs() {
        assert_eq!(berlekamp_massey(&bits("000000")).complexity, 0);
        assert_eq!(berlekamp_massey(&[]).complexity, 0);
        assert_eq!(berlekamp_massey(&bits("0000001")).complexity, 7);
    }

    #[test]
    fn period_three() {
        let out = berlekamp_massey(&bits("110110"));
        assert_eq!(out.complexity, 2);
        assert_eq!(out.connection.to_string(), "1 + x + x^2");
        assert!(out.generates(&bits("110110")));
    }

    #[test]
    fn prbs_taps() {
        // s_t = s_{t-5} + s_{t-9}
        let s = bits("0000100011000010011");
        let out = berlekamp_massey(&s);
        assert_eq!(out.complexity, 9);
        assert_eq!(out.connection.to_string(), "1 + x^5 + x^9");
        assert!(out.generates(&s));
    }

    #[test]
    fn long_input_crosses_words() {
        // m-sequence of x^7 + x + 1 over two periods
        let mut s = vec![true, false, false, false, false, false, false];
        while s.len() < 254 {
            let j = s.len();
            s.push(s[j - 7] ^ s[j - 6]);
        }
        let out = berlekamp_massey(&s);
        assert_eq!(out.complexity, 7);
        assert!(out.generates(&s));
    }
}
