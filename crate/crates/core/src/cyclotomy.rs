//! Ding-Helleseth generalized cyclotomy of order `2n` modulo `N = pq`.
//!
//! [`derive_params`] fixes the common primitive root `g` and the witness `x`
//! (`x = g mod p`, `x = 1 mod q`); [`build_partition`] materializes the
//! classes `D_i`, their prime-modulus shadows, the unions `B_m`, the
//! multiples-of-a-prime families `P_m`, `Q_m`, and the split `Z_N = C0 ∪ C1`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{common_primitive_root, crt_pair, is_prime, mod_pow, Residue};

/// Parameters of one construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub p: u64,
    pub q: u64,
    /// `N = pq`.
    #[serde(rename = "N")]
    pub modulus: u64,
    /// Half the order of the cyclotomy: `2n = gcd(p-1, q-1)`.
    pub n: u64,
    /// Size of each class `D_i`: `e = (p-1)(q-1)/(2n)`.
    pub e: u64,
    /// Smallest common primitive root of `p` and `q`.
    pub g: u64,
    /// CRT witness with `x = g mod p`, `x = 1 mod q`.
    pub x: u64,
}

impl Params {
    /// Number of classes, `2n`.
    pub fn order(&self) -> usize {
        (2 * self.n) as usize
    }

    /// `(pq - 1) / 2`.
    pub fn half_period(&self) -> u64 {
        (self.modulus - 1) / 2
    }
}

pub fn derive_params(p: u64, q: u64) -> Result<Params> {
    for (name, value) in [("p", p), ("q", q)] {
        if !is_prime(value) {
            return Err(Error::NotPrime { name, value });
        }
        if value == 2 {
            return Err(Error::NotOdd { name, value });
        }
    }
    if p >= q {
        return Err(Error::OrderViolation { p, q });
    }
    let modulus = p
        .checked_mul(q)
        .ok_or(Error::Overflow("p * q exceeds 64 bits"))?;
    let two_n = (p - 1).gcd(&(q - 1));
    let n = two_n / 2;
    let e = (p - 1) * (q - 1) / two_n;
    let g = common_primitive_root(p, q)?;
    let x = crt_pair(Residue::new(g, p)?, Residue::new(1, q)?)?.value();
    Ok(Params {
        p,
        q,
        modulus,
        n,
        e,
        g,
        x,
    })
}

/// The cell of the partition a residue falls into.
///
/// For the multiples of a prime the carried index is the fine class: `a = p*b`
/// with `b` in `D_i^(q)` gives `MultipleOfP(i)`. When `n = 1` this coincides
/// with the family index `m` of `P_m`; for larger `n` the family `P_m`
/// contains the classes `m, m+1, .., m+n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Zero,
    Unit(usize),
    MultipleOfP(usize),
    MultipleOfQ(usize),
}

/// Every index set of the cyclotomy, stored as sorted residue arrays with a
/// constant-time location lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicPartition {
    params: Params,
    classes: Vec<Vec<u64>>,
    classes_mod_p: Vec<Vec<u64>>,
    classes_mod_q: Vec<Vec<u64>>,
    unions: Vec<Vec<u64>>,
    unions_mod_p: Vec<Vec<u64>>,
    unions_mod_q: Vec<Vec<u64>>,
    p_families: Vec<Vec<u64>>,
    q_families: Vec<Vec<u64>>,
    p_set: Vec<u64>,
    q_set: Vec<u64>,
    units: Vec<u64>,
    c0: Vec<u64>,
    c1: Vec<u64>,
    index: Vec<Location>,
    class_of_p: Vec<Option<usize>>,
    class_of_q: Vec<Option<usize>>,
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

fn union_window(sets: &[Vec<u64>], start: usize, width: usize) -> Vec<u64> {
    let k = sets.len();
    sorted(
        (0..width)
            .flat_map(|o| sets[(start + o) % k].iter().copied())
            .collect(),
    )
}

fn prime_classes(g: u64, prime: u64, order: usize) -> Vec<Vec<u64>> {
    let per_class = (prime - 1) / order as u64;
    let root = Residue::new(g, prime).expect("prime >= 3");
    (0..order)
        .map(|i| {
            sorted(
                (0..per_class)
                    .map(|t| mod_pow(root, order as u64 * t + i as u64).value())
                    .collect(),
            )
        })
        .collect()
}

pub fn build_partition(params: &Params) -> CyclotomicPartition {
    let Params {
        p,
        q,
        modulus,
        e,
        g,
        x,
        ..
    } = *params;
    let order = params.order();
    let n = params.n as usize;
    let big = Residue::new(g, modulus).expect("modulus >= 15");
    let wit = Residue::new(x, modulus).expect("modulus >= 15");

    let per_class = e / order as u64;
    let classes: Vec<Vec<u64>> = (0..order)
        .map(|i| {
            let mut v = Vec::with_capacity(e as usize);
            for t in 0..per_class {
                let base = big.pow(order as u64 * t + i as u64);
                for l in 0..order as u64 {
                    v.push(base.mul(&wit.pow(l)).value());
                }
            }
            sorted(v)
        })
        .collect();

    let classes_mod_p = prime_classes(g, p, order);
    let classes_mod_q = prime_classes(g, q, order);

    let unions: Vec<_> = (0..order).map(|m| union_window(&classes, m, n)).collect();
    let unions_mod_p: Vec<_> = (0..order)
        .map(|m| union_window(&classes_mod_p, m, n))
        .collect();
    let unions_mod_q: Vec<_> = (0..order)
        .map(|m| union_window(&classes_mod_q, m, n))
        .collect();

    let p_families: Vec<Vec<u64>> = unions_mod_q
        .iter()
        .map(|b| sorted(b.iter().map(|&v| p * v % modulus).collect()))
        .collect();
    let q_families: Vec<Vec<u64>> = unions_mod_p
        .iter()
        .map(|b| sorted(b.iter().map(|&v| q * v % modulus).collect()))
        .collect();

    let p_set = sorted([&p_families[0][..], &p_families[n][..]].concat());
    let q_set = sorted([&q_families[0][..], &q_families[n][..]].concat());
    let units = sorted(classes.concat());
    let c0 = sorted([&[0][..], &p_families[0], &q_families[0], &unions[0]].concat());
    let c1 = sorted([&p_families[n][..], &q_families[n], &unions[n]].concat());

    let mut index = vec![Location::Zero; modulus as usize];
    for (i, class) in classes.iter().enumerate() {
        for &a in class {
            index[a as usize] = Location::Unit(i);
        }
    }
    let mut class_of_p = vec![None; p as usize];
    for (i, class) in classes_mod_p.iter().enumerate() {
        for &b in class {
            class_of_p[b as usize] = Some(i);
            index[(q * b % modulus) as usize] = Location::MultipleOfQ(i);
        }
    }
    let mut class_of_q = vec![None; q as usize];
    for (i, class) in classes_mod_q.iter().enumerate() {
        for &b in class {
            class_of_q[b as usize] = Some(i);
            index[(p * b % modulus) as usize] = Location::MultipleOfP(i);
        }
    }

    CyclotomicPartition {
        params: *params,
        classes,
        classes_mod_p,
        classes_mod_q,
        unions,
        unions_mod_p,
        unions_mod_q,
        p_families,
        q_families,
        p_set,
        q_set,
        units,
        c0,
        c1,
        index,
        class_of_p,
        class_of_q,
    }
}

impl CyclotomicPartition {
    pub fn params(&self) -> &Params {
        &self.params
    }

    /// `D_i`.
    pub fn class(&self, i: usize) -> &[u64] {
        &self.classes[i % self.classes.len()]
    }

    /// `D_i^(p)`.
    pub fn class_mod_p(&self, i: usize) -> &[u64] {
        &self.classes_mod_p[i % self.classes.len()]
    }

    /// `D_i^(q)`.
    pub fn class_mod_q(&self, i: usize) -> &[u64] {
        &self.classes_mod_q[i % self.classes.len()]
    }

    /// `B_m`.
    pub fn union(&self, m: usize) -> &[u64] {
        &self.unions[m % self.classes.len()]
    }

    /// `B_m^(p)`.
    pub fn union_mod_p(&self, m: usize) -> &[u64] {
        &self.unions_mod_p[m % self.classes.len()]
    }

    /// `B_m^(q)`.
    pub fn union_mod_q(&self, m: usize) -> &[u64] {
        &self.unions_mod_q[m % self.classes.len()]
    }

    /// `P_m = p * B_m^(q)`.
    pub fn p_family(&self, m: usize) -> &[u64] {
        &self.p_families[m % self.classes.len()]
    }

    /// `Q_m = q * B_m^(p)`.
    pub fn q_family(&self, m: usize) -> &[u64] {
        &self.q_families[m % self.classes.len()]
    }

    /// `P = P_0 ∪ P_n`, the nonzero multiples of `p`.
    pub fn p_set(&self) -> &[u64] {
        &self.p_set
    }

    /// `Q = Q_0 ∪ Q_n`, the nonzero multiples of `q`.
    pub fn q_set(&self) -> &[u64] {
        &self.q_set
    }

    /// `Z_N^*`.
    pub fn units(&self) -> &[u64] {
        &self.units
    }

    pub fn c0(&self) -> &[u64] {
        &self.c0
    }

    pub fn c1(&self) -> &[u64] {
        &self.c1
    }

    pub fn locate(&self, a: u64) -> Location {
        self.index[(a % self.params.modulus) as usize]
    }

    /// Class index `i` with `r mod p` in `D_i^(p)`, or `None` when `p | r`.
    pub fn class_index_mod_p(&self, r: u64) -> Option<usize> {
        self.class_of_p[(r % self.params.p) as usize]
    }

    /// Class index `i` with `r mod q` in `D_i^(q)`, or `None` when `q | r`.
    pub fn class_index_mod_q(&self, r: u64) -> Option<usize> {
        self.class_of_q[(r % self.params.q) as usize]
    }

    /// Whether class `c` belongs to the window `m, m+1, .., m+n-1`.
    fn in_window(&self, c: usize, m: usize) -> bool {
        let order = self.classes.len();
        (c + order - m % order) % order < self.params.n as usize
    }

    /// Membership in `P_m`.
    pub fn in_p_family(&self, m: usize, a: u64) -> bool {
        matches!(self.locate(a), Location::MultipleOfP(c) if self.in_window(c, m))
    }

    /// Membership in `Q_m`.
    pub fn in_q_family(&self, m: usize, a: u64) -> bool {
        matches!(self.locate(a), Location::MultipleOfQ(c) if self.in_window(c, m))
    }

    /// Membership in `B_m`.
    pub fn in_union(&self, m: usize, a: u64) -> bool {
        matches!(self.locate(a), Location::Unit(c) if self.in_window(c, m))
    }

    pub fn in_c1(&self, a: u64) -> bool {
        let n = self.params.n as usize;
        self.in_p_family(n, a) || self.in_q_family(n, a) || self.in_union(n, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disjoint_union_of(parts: &[&[u64]], whole: &[u64]) -> bool {
        let mut all: Vec<u64> = parts.iter().flat_map(|s| s.iter().copied()).collect();
        all.sort_unstable();
        all == whole
    }

    #[test]
    fn params_3_5() {
        let p = derive_params(3, 5).unwrap();
        assert_eq!(
            p,
            Params {
                p: 3,
                q: 5,
                modulus: 15,
                n: 1,
                e: 4,
                g: 2,
                x: 11
            }
        );
    }

    #[test]
    fn params_5_13() {
        let p = derive_params(5, 13).unwrap();
        assert_eq!((p.modulus, p.n, p.e, p.g), (65, 2, 12, 2));
        // x = 2 mod 5, x = 1 mod 13
        assert_eq!(p.x, 27);
    }

    #[test]
    fn params_errors() {
        assert!(matches!(
            derive_params(5, 4),
            Err(Error::NotPrime {
                name: "q",
                value: 4
            })
        ));
        assert!(matches!(
            derive_params(4, 5),
            Err(Error::NotPrime {
                name: "p",
                value: 4
            })
        ));
        assert!(matches!(derive_params(2, 5), Err(Error::NotOdd { .. })));
        assert_eq!(
            derive_params(7, 5),
            Err(Error::OrderViolation { p: 7, q: 5 })
        );
        assert_eq!(
            derive_params(5, 5),
            Err(Error::OrderViolation { p: 5, q: 5 })
        );
        assert_eq!(
            derive_params(5, 4).unwrap_err().to_string(),
            "q must be an odd prime (got 4)"
        );
    }

    #[test]
    fn partition_3_5() {
        let part = build_partition(&derive_params(3, 5).unwrap());
        assert_eq!(part.class(0), &[1, 4, 11, 14]);
        assert_eq!(part.class(1), &[2, 7, 8, 13]);
        assert_eq!(part.p_family(0), &[3, 12]);
        assert_eq!(part.p_family(1), &[6, 9]);
        assert_eq!(part.q_family(0), &[5]);
        assert_eq!(part.q_family(1), &[10]);
        assert_eq!(part.c1(), &[2, 6, 7, 8, 9, 10, 13]);
        assert_eq!(part.c0(), &[0, 1, 3, 4, 5, 11, 12, 14]);
    }

    #[test]
    fn locate_3_5() {
        let part = build_partition(&derive_params(3, 5).unwrap());
        assert_eq!(part.locate(0), Location::Zero);
        assert_eq!(part.locate(11), Location::Unit(0));
        assert_eq!(part.locate(6), Location::MultipleOfP(1));
        assert_eq!(part.locate(10), Location::MultipleOfQ(1));
    }

    #[test]
    fn structure_over_small_pairs() {
        for &(p, q) in &[
            (3, 5),
            (3, 7),
            (5, 7),
            (7, 11),
            (5, 13),
            (5, 17),
            (7, 13),
            (13, 37),
            (7, 19),
        ] {
            let params = derive_params(p, q).unwrap();
            let part = build_partition(&params);
            let order = params.order();
            let nn = params.modulus;

            let classes: Vec<&[u64]> = (0..order).map(|i| part.class(i)).collect();
            assert!(
                disjoint_union_of(&classes, part.units()),
                "({p},{q}) classes tile units"
            );
            let units: Vec<u64> = (1..nn).filter(|a| a.gcd(&nn) == 1).collect();
            assert_eq!(part.units(), &units[..]);

            for i in 0..order {
                assert_eq!(part.class(i).len() as u64, params.e);
                assert_eq!(part.class_mod_p(i).len() as u64, (p - 1) / (2 * params.n));
                assert_eq!(part.class_mod_q(i).len() as u64, (q - 1) / (2 * params.n));
                let shifted_p = sorted(
                    part.class_mod_p(i)
                        .iter()
                        .map(|&v| v * params.g % p)
                        .collect(),
                );
                assert_eq!(shifted_p, part.class_mod_p(i + 1));
                let shifted_q = sorted(
                    part.class_mod_q(i)
                        .iter()
                        .map(|&v| v * params.g % q)
                        .collect(),
                );
                assert_eq!(shifted_q, part.class_mod_q(i + 1));
                assert_eq!(part.p_family(i).len() as u64, (q - 1) / 2);
                assert_eq!(part.q_family(i).len() as u64, (p - 1) / 2);
            }

            let everything: Vec<u64> = (0..nn).collect();
            assert!(disjoint_union_of(
                &[&[0], part.p_set(), part.q_set(), part.units()],
                &everything
            ));
            assert!(disjoint_union_of(&[part.c0(), part.c1()], &everything));
            assert_eq!(part.c1().len() as u64, (nn - 1) / 2);
            assert_eq!(part.p_set(), &(1..q).map(|b| p * b).collect::<Vec<_>>()[..]);

            for a in 0..nn {
                assert_eq!(part.in_c1(a), part.c1().binary_search(&a).is_ok());
                for m in 0..order {
                    assert_eq!(
                        part.in_p_family(m, a),
                        part.p_family(m).binary_search(&a).is_ok()
                    );
                    assert_eq!(
                        part.in_q_family(m, a),
                        part.q_family(m).binary_search(&a).is_ok()
                    );
                    assert_eq!(part.in_union(m, a), part.union(m).binary_search(&a).is_ok());
                }
            }
        }
    }
}
