//! The splitting field GF(2^m) of `x^N - 1` with a fixed primitive `N`-th
//! root of unity, and the zero-spectrum linear complexity count.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomy::{CyclotomicPartition, Location};
use crate::error::{Error, Result};
use crate::gf2poly::{poly_gcd, BinaryPoly, Degree};
use crate::numtheory::{multiplicative_order, prime_divisors, Residue};

/// A field element in polynomial-basis coordinates, padded to the context's
/// limb count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    limbs: Vec<u64>,
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        self.limbs.first() == Some(&1) && self.limbs[1..].iter().all(|&w| w == 0)
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Little-endian hex, same packing as [`BinaryPoly::to_hex`]; zero is `"0"`.
    pub fn to_hex(&self) -> String {
        let p = BinaryPoly::from_limbs(self.limbs.clone());
        if p.is_zero() {
            "0".to_string()
        } else {
            p.to_hex()
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldElem({})",
            BinaryPoly::from_limbs(self.limbs.clone())
        )
    }
}

/// GF(2^m) for `m = ord_N(2)`, with `alpha` of order exactly `N`.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    period: u64,
    degree: usize,
    reduction: BinaryPoly,
    alpha: FieldElem,
    /// `alpha^k` for `k = 0..N`.
    powers: Vec<FieldElem>,
}

/// Rabin-style check with early exit: `f` of degree `m` is irreducible iff
/// `gcd(x^(2^i) - x, f) = 1` for all `i <= m/2`.
pub fn is_irreducible(f: &BinaryPoly) -> bool {
    let m = match f.degree() {
        Degree::Finite(m) if m >= 1 => m,
        _ => return false,
    };
    if m == 1 {
        return true;
    }
    let x = BinaryPoly::monomial(1);
    let mut u = x.clone();
    for _ in 0..m / 2 {
        u = u.square().rem(f);
        let g = poly_gcd(&(&u + &x), f).expect("f is nonzero");
        if !g.is_one() {
            return false;
        }
    }
    true
}

/// Smallest irreducible of degree `m` by integer encoding of the coefficients.
pub fn smallest_irreducible(m: usize) -> BinaryPoly {
    assert!(m >= 1);
    if m == 1 {
        return BinaryPoly::monomial(1);
    }
    let top = BinaryPoly::monomial(m);
    // constant term 1, and odd total weight (otherwise x + 1 divides)
    (1u64..)
        .step_by(2)
        .filter(|low| low.count_ones() % 2 == 0)
        .map(|low| &top + &BinaryPoly::from_u64(low))
        .find(is_irreducible)
        .expect("irreducibles exist in every degree")
}

impl FieldCtx {
    pub fn period(&self) -> u64 {
        self.period
    }

    /// Extension degree `m`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn reduction(&self) -> &BinaryPoly {
        &self.reduction
    }

    pub fn alpha(&self) -> &FieldElem {
        &self.alpha
    }

    fn words(&self) -> usize {
        self.degree.div_ceil(64)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            limbs: vec![0; self.words()],
        }
    }

    pub fn one(&self) -> FieldElem {
        let mut e = self.zero();
        e.limbs[0] = 1;
        e
    }

    /// Reduces a polynomial into the field.
    pub fn from_poly(&self, p: &BinaryPoly) -> FieldElem {
        let r = p.rem(&self.reduction);
        let mut limbs = r.limbs().to_vec();
        limbs.resize(self.words(), 0);
        FieldElem { limbs }
    }

    pub fn to_poly(&self, a: &FieldElem) -> BinaryPoly {
        BinaryPoly::from_limbs(a.limbs.clone())
    }

    /// The constant 0 or 1.
    pub fn bit(&self, b: bool) -> FieldElem {
        if b {
            self.one()
        } else {
            self.zero()
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.from_poly(&self.to_poly(a).mul(&self.to_poly(b)))
    }

    pub fn square(&self, a: &FieldElem) -> FieldElem {
        self.from_poly(&self.to_poly(a).square())
    }

    pub fn pow(&self, a: &FieldElem, exp: u64) -> FieldElem {
        self.pow_big(a, &BigUint::from(exp))
    }

    pub fn pow_big(&self, a: &FieldElem, exp: &BigUint) -> FieldElem {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.square(&acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// `alpha^k` from the cached table, exponent reduced mod `N`.
    pub fn alpha_pow(&self, k: u64) -> &FieldElem {
        &self.powers[(k % self.period) as usize]
    }
}

/// Builds GF(2^m) with `m = ord_N(2)`.
///
/// The reduction polynomial is the smallest irreducible of degree `m`. The
/// root `alpha` is `beta^((2^m - 1)/N)` for the smallest-encoding `beta`
/// whose image has order exactly `N`.
pub fn make_field(period: u64) -> Result<FieldCtx> {
    if period < 3 || period % 2 == 0 {
        return Err(Error::InvalidModulus(period));
    }
    let degree = multiplicative_order(Residue::new(2u64, period)?)? as usize;
    let reduction = smallest_irreducible(degree);
    let cofactor = ((BigUint::one() << degree) - 1u32) / BigUint::from(period);
    let mut ctx = FieldCtx {
        period,
        degree,
        reduction,
        alpha: FieldElem { limbs: Vec::new() },
        powers: Vec::new(),
    };
    let divisors = prime_divisors(period);
    let alpha = (2u64..)
        .map(|enc| ctx.from_poly(&BinaryPoly::from_u64(enc)))
        .map(|beta| ctx.pow_big(&beta, &cofactor))
        .find(|cand| {
            ctx.pow(cand, period).is_one()
                && divisors
                    .iter()
                    .all(|&r| !ctx.pow(cand, period / r).is_one())
        })
        .expect("the multiplicative group is cyclic of order divisible by N");

    let mut powers = Vec::with_capacity(period as usize);
    let mut cur = ctx.one();
    for _ in 0..period {
        let next = ctx.mul(&cur, &alpha);
        powers.push(cur);
        cur = next;
    }
    debug_assert!(cur.is_one());
    ctx.alpha = alpha;
    ctx.powers = powers;
    Ok(ctx)
}

/// `sum_{t in set} alpha^(k t)`.
pub fn subset_character_sum(ctx: &FieldCtx, set: &[u64], k: u64) -> FieldElem {
    let n = ctx.period;
    let k = k % n;
    let mut acc = ctx.zero();
    for &t in set {
        acc.add_assign(&ctx.powers[(k as u128 * (t % n) as u128 % n as u128) as usize]);
    }
    acc
}

/// `S(alpha^k)`, the support polynomial of `C1` at `alpha^k`.
pub fn eval_s(ctx: &FieldCtx, partition: &CyclotomicPartition, k: u64) -> FieldElem {
    subset_character_sum(ctx, partition.c1(), k)
}

/// Horner evaluation of `poly` at `point`, through field multiplications only.
pub fn eval_poly(ctx: &FieldCtx, poly: &BinaryPoly, point: &FieldElem) -> FieldElem {
    let Some(d) = poly.degree().finite() else {
        return ctx.zero();
    };
    let mut acc = ctx.zero();
    for i in (0..=d).rev() {
        acc = ctx.mul(&acc, point);
        if poly.coeff(i) {
            acc.add_assign(&ctx.one());
        }
    }
    acc
}

/// `S(alpha^k)` for every `k` in `0..N`.
pub fn spectrum_values(ctx: &FieldCtx, partition: &CyclotomicPartition) -> Vec<FieldElem> {
    (0..ctx.period)
        .into_par_iter()
        .map(|k| eval_s(ctx, partition, k))
        .collect()
}

/// Zero tallies of `S(alpha^k)` over `0 <= k < N`, split by cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Sorted exponents `k` with `S(alpha^k) = 0`.
    pub zero_set: Vec<u64>,
    pub total: u64,
    pub at_zero: u64,
    pub in_units: u64,
    pub in_p: u64,
    pub in_q: u64,
    /// `N - total`.
    pub linear_complexity: u64,
}

impl SpectrumReport {
    pub fn from_values(values: &[FieldElem], partition: &CyclotomicPartition) -> Self {
        let zero_set: Vec<u64> = (0..values.len() as u64)
            .filter(|&k| values[k as usize].is_zero())
            .collect();
        let mut report = SpectrumReport {
            total: zero_set.len() as u64,
            at_zero: 0,
            in_units: 0,
            in_p: 0,
            in_q: 0,
            linear_complexity: values.len() as u64 - zero_set.len() as u64,
            zero_set,
        };
        for &k in &report.zero_set {
            match partition.locate(k) {
                Location::Zero => report.at_zero += 1,
                Location::Unit(_) => report.in_units += 1,
                Location::MultipleOfP(_) => report.in_p += 1,
                Location::MultipleOfQ(_) => report.in_q += 1,
            }
        }
        report
    }

    /// Whether the zero set is closed under `k -> 2k mod N`.
    pub fn closed_under_doubling(&self, period: u64) -> bool {
        self.zero_set
            .iter()
            .all(|&k| self.zero_set.binary_search(&(2 * k % period)).is_ok())
    }
}

pub fn zero_spectrum(ctx: &FieldCtx, partition: &CyclotomicPartition) -> SpectrumReport {
    SpectrumReport::from_values(&spectrum_values(ctx, partition), partition)
}

/// Which family a class sum runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `T_a^(p)`, over `P_a`.
    P,
    /// `T_a^(q)`, over `Q_a`.
    Q,
}

/// `T_a(alpha^k)`: the character sum over `P_a` or `Q_a`.
pub fn eval_t(
    ctx: &FieldCtx,
    partition: &CyclotomicPartition,
    side: Side,
    a: usize,
    k: u64,
) -> Result<FieldElem> {
    let order = partition.params().order();
    if a >= order {
        return Err(Error::IndexOutOfRange {
            index: a,
            bound: order,
        });
    }
    let set = match side {
        Side::P => partition.p_family(a),
        Side::Q => partition.q_family(a),
    };
    Ok(subset_character_sum(ctx, set, k))
}
