//! Cross-checks of the fast routines against naive reference computations.

use dhgc::cyclotomy::{build_partition, derive_params};
use dhgc::gf2m::{eval_poly, eval_s, make_field};
use dhgc::gf2poly::{berlekamp_massey, poly_gcd, BinaryPoly};
use dhgc::numtheory::{
    crt_pair, euler_phi, is_prime, multiplicative_order, primitive_root, Residue,
};
use dhgc::sequence::generate;
use proptest::prelude::*;

fn bits_of(word: u32, len: usize) -> Vec<bool> {
    (0..len).map(|i| word >> i & 1 == 1).collect()
}

/// Length of the shortest LFSR generating `s`, by trying every connection.
fn shortest_lfsr(s: &[bool]) -> usize {
    for l in 0..=s.len() {
        for taps in 0u32..1 << l {
            let ok = (l..s.len()).all(|t| {
                let mut acc = false;
                for i in 1..=l {
                    if taps >> (i - 1) & 1 == 1 {
                        acc ^= s[t - i];
                    }
                }
                acc == s[t]
            });
            if ok {
                return l;
            }
        }
    }
    unreachable!("an LFSR of length len(s) always exists")
}

#[test]
fn berlekamp_massey_matches_exhaustive_search() {
    for word in 0u32..1 << 10 {
        let s = bits_of(word, 10);
        let out = berlekamp_massey(&s);
        assert_eq!(out.complexity, shortest_lfsr(&s), "input {word:010b}");
        assert!(out.generates(&s), "input {word:010b}");
    }
}

#[test]
fn berlekamp_massey_short_lengths() {
    for len in 1..=9 {
        for word in 0u32..1 << len {
            let s = bits_of(word, len);
            assert_eq!(berlekamp_massey(&s).complexity, shortest_lfsr(&s));
        }
    }
}

fn deg(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

fn rem_u64(mut a: u64, b: u64) -> u64 {
    while a != 0 && deg(a) >= deg(b) {
        a ^= b << (deg(a) - deg(b));
    }
    a
}

/// Highest-degree common divisor, by trying every candidate.
fn brute_gcd(a: u64, b: u64) -> u64 {
    let mut best = 1;
    for d in 1u64..128 {
        if (a == 0 || rem_u64(a, d) == 0) && (b == 0 || rem_u64(b, d) == 0) && deg(d) > deg(best) {
            best = d;
        }
    }
    best
}

#[test]
fn poly_gcd_matches_divisor_enumeration() {
    for a in 0u64..128 {
        for b in 0u64..128 {
            let (pa, pb) = (BinaryPoly::from_u64(a), BinaryPoly::from_u64(b));
            let got = poly_gcd(&pa, &pb);
            if a == 0 && b == 0 {
                assert!(got.is_err());
                continue;
            }
            assert_eq!(
                got.unwrap(),
                BinaryPoly::from_u64(brute_gcd(a, b)),
                "gcd({a:#b}, {b:#b})"
            );
        }
    }
}

fn is_prime_naive(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn primality_agrees_with_trial_division() {
    for n in 0u64..20_000 {
        assert_eq!(is_prime(n), is_prime_naive(n), "{n}");
    }
}

#[test]
fn primitive_roots_by_enumeration() {
    for p in (3u64..400).filter(|&p| is_prime_naive(p)) {
        let g = primitive_root(p).unwrap();
        let mut seen = vec![false; p as usize];
        let mut x = 1;
        for _ in 0..p - 1 {
            x = x * g % p;
            seen[x as usize] = true;
        }
        assert_eq!(seen.iter().filter(|&&b| b).count() as u64, p - 1, "p = {p}");
        for h in 2..g {
            let order = (1..p)
                .find(|&k| (0..k).fold(1, |acc, _| acc * h % p) == 1)
                .unwrap();
            assert!(order < p - 1, "{h} is a smaller root mod {p}");
        }
    }
}

#[test]
fn horner_matches_subset_sum() {
    for &(p, q) in &[(3, 5), (3, 7), (5, 7), (7, 11), (5, 13), (5, 17), (7, 13)] {
        let params = derive_params(p, q).unwrap();
        let part = build_partition(&params);
        let poly = generate(&part).support_poly();
        let ctx = make_field(params.modulus).unwrap();
        for k in 0..params.modulus {
            let horner = eval_poly(&ctx, &poly, ctx.alpha_pow(k));
            assert_eq!(horner, eval_s(&ctx, &part, k), "({p},{q}) k = {k}");
        }
    }
}

proptest! {
    #[test]
    fn order_divides_phi(m in 2u64..1000, a in 1u64..1000) {
        let r = Residue::new(a, m).unwrap();
        match multiplicative_order(r) {
            Ok(k) => {
                prop_assert_eq!(euler_phi(m) % k, 0);
                let naive = (1..=m).find(|&j| (0..j).fold(1 % m, |acc, _| acc * (a % m) % m) == 1 % m);
                prop_assert_eq!(Some(k), naive);
            }
            Err(_) => prop_assert!(num_integer::gcd(a, m) != 1),
        }
    }

    #[test]
    fn crt_round_trip(m1 in 2u64..100, m2 in 2u64..100, a in 0u64..10_000, b in 0u64..10_000) {
        prop_assume!(num_integer::gcd(m1, m2) == 1);
        let x = crt_pair(Residue::new(a, m1).unwrap(), Residue::new(b, m2).unwrap()).unwrap();
        prop_assert_eq!(x.modulus(), m1 * m2);
        prop_assert_eq!(x.value() % m1, a % m1);
        prop_assert_eq!(x.value() % m2, b % m2);
    }
}
