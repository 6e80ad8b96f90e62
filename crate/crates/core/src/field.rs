//! Arithmetic in GF(2^n) for even `n`, realized in a polynomial basis over a
//! primitive modulus with the residue class of `x` as the primitive element.
//!
//! Multiplication goes through discrete-log / antilog tables. The trace
//! `Tr_1^n` is a GF(2)-linear functional, so it is stored as the bit mask of
//! its values on the basis monomials; evaluating it is a parity of `x & mask`.
//! Subfields GF(2^j), j | n, are realized inside the ambient field as
//! `{x : x^(2^j) = x}`.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 24;

/// An element of GF(2^n) in polynomial-basis coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// addition in characteristic 2 is XOR
impl Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl fmt::LowerHex for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// Multiply two GF(2) polynomials given as bit masks (degrees < 32).
pub(crate) fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

pub(crate) fn poly_mod(mut a: u64, modulus: u64, n: u32) -> u64 {
    for bit in (n..64).rev() {
        if (a >> bit) & 1 == 1 {
            a ^= modulus << (bit - n);
        }
    }
    a
}

/// `x^e mod modulus` over GF(2).
pub(crate) fn x_pow_mod(e: u64, modulus: u64, n: u32) -> u64 {
    let mut result = 1u64;
    let mut base = poly_mod(0b10, modulus, n);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mod(clmul(result, base), modulus, n);
        }
        base = poly_mod(clmul(base, base), modulus, n);
        e >>= 1;
    }
    result
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v.is_multiple_of(p) {
            out.push(p);
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// True iff `modulus` (an (n+1)-bit mask) is a primitive polynomial of degree `n`,
/// i.e. `x` has multiplicative order exactly `2^n - 1` modulo it.
pub fn is_primitive(modulus: u64, n: u32) -> bool {
    if n == 0 || n > 32 || modulus >> n != 1 || modulus & 1 == 0 {
        return false;
    }
    let order = (1u64 << n) - 1;
    if x_pow_mod(order, modulus, n) != 1 {
        return false;
    }
    prime_factors(order).into_iter().all(|p| x_pow_mod(order / p, modulus, n) != 1)
}

/// The numerically (lexicographically) smallest primitive polynomial of degree `n`.
pub fn smallest_primitive(n: u32) -> u64 {
    let lo = (1u64 << n) | 1;
    let hi = 1u64 << (n + 1);
    (lo..hi).step_by(2).find(|&m| is_primitive(m, n)).expect("a primitive polynomial exists for every degree")
}

/// A concrete GF(2^n): modulus, log/antilog tables and the absolute trace.
#[derive(Clone)]
pub struct FieldContext {
    n: u32,
    modulus: u64,
    order: u32,
    exp_table: Vec<u32>,
    log_table: Vec<u32>,
    trace_mask: u32,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("n", &self.n)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .finish()
    }
}

impl FieldContext {
    /// Builds the ambient field GF(2^n); `n` must be even with `4 <= n <= 24`.
    pub fn new(n: u32, modulus: Option<u64>) -> Result<Self> {
        if !n.is_multiple_of(2) || !(4..=MAX_DEGREE).contains(&n) {
            return Err(Error::UnsupportedDegree(n));
        }
        Self::build(n, modulus)
    }

    /// Builds GF(2^l) for any `1 <= l <= 24`. Used for standalone root-count
    /// experiments where the degree need not be even.
    pub fn auxiliary(l: u32, modulus: Option<u64>) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&l) {
            return Err(Error::UnsupportedAuxDegree(l));
        }
        Self::build(l, modulus)
    }

    fn build(n: u32, modulus: Option<u64>) -> Result<Self> {
        let modulus = match modulus {
            Some(m) => {
                if m >> n != 1 {
                    return Err(Error::ModulusDegree { modulus: m, n });
                }
                if !is_primitive(m, n) {
                    return Err(Error::NotPrimitive(m));
                }
                m
            }
            None => smallest_primitive(n),
        };
        let size = 1usize << n;
        let order = (size - 1) as u32;
        let mut exp_table = vec![0u32; order as usize];
        let mut log_table = vec![0u32; size];
        let mut x: u64 = 1;
        for (i, slot) in exp_table.iter_mut().enumerate() {
            *slot = x as u32;
            log_table[x as usize] = i as u32;
            x <<= 1;
            if x >> n & 1 == 1 {
                x ^= modulus;
            }
        }
        debug_assert_eq!(x, 1);

        let mut ctx = FieldContext { n, modulus, order, exp_table, log_table, trace_mask: 0 };
        let mut mask = 0u32;
        for i in 0..n {
            let basis = FieldElement(1 << i);
            if ctx.trace_by_squaring(basis) {
                mask |= 1 << i;
            }
        }
        ctx.trace_mask = mask;
        Ok(ctx)
    }

    /// `Tr_1^n(x) = x + x^2 + ... + x^(2^(n-1))` evaluated directly.
    pub fn trace_by_squaring(&self, x: FieldElement) -> bool {
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..self.n {
            acc += y;
            y = self.square(y);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 == 1
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of elements, `2^n`.
    #[inline]
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Multiplicative group order, `2^n - 1`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The primitive element, the residue class of `x`.
    pub fn pi(&self) -> FieldElement {
        self.exp(1)
    }

    /// Mask whose parity against an element gives its absolute trace.
    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    /// The full absolute-trace table indexed by element bits.
    pub fn trace_table(&self) -> Vec<u8> {
        (0..self.size() as u32).map(|x| ((x & self.trace_mask).count_ones() & 1) as u8).collect()
    }

    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if (bits as usize) < self.size() {
            Ok(FieldElement(bits))
        } else {
            Err(Error::OutOfField { value: bits, n: self.n })
        }
    }

    /// `pi^i`.
    #[inline]
    pub fn exp(&self, i: u64) -> FieldElement {
        FieldElement(self.exp_table[(i % self.order as u64) as usize])
    }

    /// Discrete log base `pi`; `None` for zero.
    #[inline]
    pub fn log(&self, x: FieldElement) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log_table[x.0 as usize])
        }
    }

    /// Raw antilog lookup; `i < 2^n - 1`.
    #[inline]
    pub(crate) fn exp_raw(&self, i: u32) -> u32 {
        self.exp_table[i as usize]
    }

    /// Canonical element order: 0, pi^0, pi^1, ..., pi^(2^n - 2).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(FieldElement::ZERO).chain(self.exp_table.iter().map(|&b| FieldElement(b)))
    }

    /// Position of `x` in the canonical order.
    pub fn index_of(&self, x: FieldElement) -> usize {
        match self.log(x) {
            None => 0,
            Some(l) => l as usize + 1,
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let s = self.log_table[a.0 as usize] + self.log_table[b.0 as usize];
        let s = if s >= self.order { s - self.order } else { s };
        FieldElement(self.exp_table[s as usize])
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        match self.log(a) {
            None => FieldElement::ZERO,
            Some(l) => {
                let ord = self.order as u64;
                FieldElement(self.exp_table[((l as u64 * (e % ord)) % ord) as usize])
            }
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        match self.log(a) {
            None => Err(Error::ZeroInverse),
            Some(0) => Ok(FieldElement::ONE),
            Some(l) => Ok(FieldElement(self.exp_table[(self.order - l) as usize])),
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplies a discrete log by `2^j` modulo `2^n - 1`; negative `j` means
    /// the inverse Frobenius.
    #[inline]
    pub(crate) fn frobenius_log(&self, log: u32, j: i64) -> u32 {
        let n = self.n as i64;
        let t = j.rem_euclid(n) as u32;
        if t == 0 || self.n == 1 {
            return log;
        }
        // 2^t * l mod (2^n - 1) is a rotation of the n-bit value l.
        let width = self.n;
        let mask = self.order as u64;
        let l = log as u64;
        let rotated = ((l << t) | (l >> (width - t))) & mask;
        if rotated == mask {
            0
        } else {
            rotated as u32
        }
    }

    /// `a^(2^j)`; `j` may be negative or exceed `n`.
    #[inline]
    pub fn frobenius(&self, a: FieldElement, j: i64) -> FieldElement {
        match self.log(a) {
            None => FieldElement::ZERO,
            Some(l) => FieldElement(self.exp_table[self.frobenius_log(l, j) as usize]),
        }
    }

    /// Absolute trace `Tr_1^n(x)` as a bit.
    #[inline]
    pub fn trace_abs(&self, x: FieldElement) -> u8 {
        ((x.0 & self.trace_mask).count_ones() & 1) as u8
    }

    /// True iff `x^(2^j) = x`.
    pub fn in_subfield(&self, x: FieldElement, j: u32) -> bool {
        self.frobenius(x, j as i64) == x
    }

    /// Relative trace `Tr_i^j(x) = sum_{t < j/i} x^(2^(i t))` for `x` in GF(2^j).
    pub fn trace_rel(&self, x: FieldElement, i: u32, j: u32) -> Result<FieldElement> {
        if i == 0 || !j.is_multiple_of(i) {
            return Err(Error::NotDivisor { i, j });
        }
        if j == 0 || !self.n.is_multiple_of(j) {
            return Err(Error::NotDivisor { i: j, j: self.n });
        }
        if !self.in_subfield(x, j) {
            return Err(Error::NotInSubfield { value: x.0, degree: j });
        }
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..j / i {
            acc += y;
            y = self.frobenius(y, i as i64);
        }
        Ok(acc)
    }

    /// `Tr_1^j` on an element of the subfield GF(2^j), as a bit.
    pub fn trace_sub(&self, x: FieldElement, j: u32) -> Result<u8> {
        let t = self.trace_rel(x, 1, j)?;
        Ok(t.0 as u8)
    }

    /// Generator of the multiplicative group of GF(2^j): `pi^((2^n-1)/(2^j-1))`.
    pub fn subfield_generator(&self, j: u32) -> Result<FieldElement> {
        if j == 0 || !self.n.is_multiple_of(j) {
            return Err(Error::NotDivisor { i: j, j: self.n });
        }
        let step = self.order / ((1u32 << j) - 1);
        Ok(self.exp(step as u64))
    }

    /// The `2^j` elements of GF(2^j) in canonical order: 0, then powers of the
    /// subfield generator.
    pub fn subfield_elements(&self, j: u32) -> Result<Vec<FieldElement>> {
        let g = self.subfield_generator(j)?;
        let step = self.log(g).unwrap_or(0) as u64;
        let count = (1u64 << j) - 1;
        let mut out = Vec::with_capacity(1 << j);
        out.push(FieldElement::ZERO);
        out.extend((0..count).map(|t| self.exp(t * step)));
        Ok(out)
    }
}

/// Which of the three regimes the parameters fall into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// m/d even (d' = d).
    EvenM,
    /// k/d even (d' = d).
    EvenK,
    /// m/d and k/d both odd (d' = 2d).
    BothOdd,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::EvenM => "m/d even",
            Case::EvenK => "k/d even",
            Case::BothOdd => "m/d and k/d odd",
        };
        f.write_str(s)
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The parameter bundle (n, m, k, d, d', q0, s) and its case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub d: u32,
    pub d_prime: u32,
    pub q0: u32,
    pub s: u32,
    pub case: Case,
}

impl Params {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if !n.is_multiple_of(2) || !(4..=MAX_DEGREE).contains(&n) {
            return Err(Error::InvalidParams { n, k, reason: "n must be even with 4 <= n <= 24" });
        }
        let m = n / 2;
        if k == 0 || k >= n {
            return Err(Error::InvalidParams { n, k, reason: "k must satisfy 1 <= k <= n-1" });
        }
        if k == m {
            return Err(Error::InvalidParams { n, k, reason: "k must differ from m = n/2" });
        }
        let d = gcd(m, k);
        let d_prime = gcd(m + k, 2 * k);
        let case = if (m / d).is_multiple_of(2) {
            Case::EvenM
        } else if (k / d).is_multiple_of(2) {
            Case::EvenK
        } else {
            Case::BothOdd
        };
        Ok(Params { n, m, k, d, d_prime, q0: 1 << d, s: n / d, case })
    }

    /// `q = 2^n`.
    pub fn q(&self) -> u64 {
        1u64 << self.n
    }

    pub fn is_both_odd(&self) -> bool {
        self.case == Case::BothOdd
    }
}

/// Convenience wrapper matching the operation name used throughout the docs.
pub fn derive_params(n: u32, k: u32) -> Result<Params> {
    Params::new(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    #[test]
    fn default_modulus_n4() {
        let ctx = FieldContext::new(4, None).unwrap();
        assert_eq!(ctx.modulus(), 0b10011);
        let pi = ctx.pi();
        let order = (1..=15u64).find(|&e| ctx.pow(pi, e) == FieldElement::ONE).unwrap();
        assert_eq!(order, 15);
    }

    #[test]
    fn smallest_primitive_is_first_candidate_that_passes() {
        // brute-force order computation over the candidates below the pick
        for n in [4u32, 6, 8] {
            let pick = smallest_primitive(n);
            for cand in ((1u64 << n) | 1..pick).step_by(2) {
                let mut x = 1u64;
                let mut ord = None;
                for e in 1..(1u64 << n) {
                    x <<= 1;
                    if x >> n & 1 == 1 {
                        x ^= cand;
                    }
                    if x == 1 {
                        ord = Some(e);
                        break;
                    }
                }
                assert_ne!(ord, Some((1u64 << n) - 1), "candidate {cand:#b}");
            }
        }
    }

    #[test]
    fn non_primitive_modulus_rejected() {
        // x^4+x^3+x^2+x+1: x has order 5
        assert_eq!(FieldContext::new(4, Some(0b11111)).unwrap_err(), Error::NotPrimitive(0b11111));
        // reducible
        assert!(FieldContext::new(4, Some(0b10001)).is_err());
        assert!(matches!(FieldContext::new(4, Some(0b1011)), Err(Error::ModulusDegree { .. })));
    }

    #[test]
    fn odd_or_large_degree_rejected() {
        assert_eq!(FieldContext::new(3, None).unwrap_err(), Error::UnsupportedDegree(3));
        assert_eq!(FieldContext::new(26, None).unwrap_err(), Error::UnsupportedDegree(26));
        assert_eq!(FieldContext::new(2, None).unwrap_err(), Error::UnsupportedDegree(2));
        assert!(FieldContext::auxiliary(3, None).is_ok());
    }

    #[test]
    fn basic_identities() {
        let ctx = FieldContext::new(8, None).unwrap();
        let pi = ctx.pi();
        let x = ctx.exp(77);
        assert_eq!(ctx.mul(x, FieldElement::ZERO), FieldElement::ZERO);
        assert_eq!(ctx.pow(pi, 255), FieldElement::ONE);
        assert_eq!(ctx.pow(FieldElement::ZERO, 0), FieldElement::ONE);
        assert_eq!(ctx.inv(pi).unwrap(), ctx.pow(pi, 254));
        assert_eq!(ctx.inv(FieldElement::ZERO), Err(Error::ZeroInverse));
    }

    #[test]
    fn log_round_trip_all_degrees() {
        for n in (4..=12).step_by(2) {
            let ctx = FieldContext::new(n, None).unwrap();
            for x in 1..ctx.size() as u32 {
                let l = ctx.log(FieldElement(x)).unwrap();
                assert_eq!(ctx.exp(l as u64).0, x);
            }
            for i in 0..ctx.order() {
                assert_eq!(ctx.log(ctx.exp(i as u64)), Some(i));
            }
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        for n in [4u32, 6, 10, 16] {
            let ctx = FieldContext::new(n, None).unwrap();
            let mut rng = StdRng::seed_from_u64(n as u64);
            for _ in 0..1000 {
                let a = FieldElement(rng.gen_range(0..ctx.size() as u32));
                let b = FieldElement(rng.gen_range(0..ctx.size() as u32));
                let c = FieldElement(rng.gen_range(0..ctx.size() as u32));
                assert_eq!(ctx.mul(a, b + c), ctx.mul(a, b) + ctx.mul(a, c));
                assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
                assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
                if !a.is_zero() {
                    assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), FieldElement::ONE);
                }
            }
        }
    }

    #[test]
    fn trace_matches_power_sum() {
        for n in (4..=12).step_by(2) {
            let ctx = FieldContext::new(n, None).unwrap();
            let table = ctx.trace_table();
            let mut zeros = 0;
            for x in 0..ctx.size() as u32 {
                let fx = FieldElement(x);
                assert_eq!(ctx.trace_by_squaring(fx) as u8, table[x as usize]);
                assert_eq!(ctx.trace_abs(ctx.square(fx)), ctx.trace_abs(fx));
                zeros += (table[x as usize] == 0) as usize;
            }
            assert_eq!(zeros, ctx.size() / 2);
        }
        let ctx = FieldContext::new(4, None).unwrap();
        assert_eq!(ctx.trace_abs(FieldElement::ZERO), 0);
        assert_eq!(ctx.elements().filter(|&x| ctx.trace_abs(x) == 0).count(), 8);
    }

    #[test]
    fn frobenius_agrees_with_pow() {
        let ctx = FieldContext::new(10, None).unwrap();
        for x in ctx.elements().step_by(7) {
            for j in -12i64..12 {
                let e = 1u64 << j.rem_euclid(10);
                assert_eq!(ctx.frobenius(x, j), ctx.pow(x, e), "x={x:?} j={j}");
            }
        }
    }

    #[test]
    fn relative_trace() {
        let ctx = FieldContext::new(4, None).unwrap();
        let pi = ctx.pi();
        let t = ctx.trace_rel(pi, 2, 4).unwrap();
        assert_eq!(t, pi + ctx.pow(pi, 4));
        assert!(ctx.in_subfield(t, 2));
        for a in ctx.subfield_elements(2).unwrap() {
            assert_eq!(ctx.trace_rel(a, 2, 4).unwrap(), FieldElement::ZERO);
        }
        assert!(matches!(ctx.trace_rel(pi, 2, 2), Err(Error::NotInSubfield { .. })));
        assert!(matches!(ctx.trace_rel(pi, 3, 4), Err(Error::NotDivisor { .. })));

        let ctx = FieldContext::new(12, None).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let x = FieldElement(rng.gen_range(0..ctx.size() as u32));
            let rel = ctx.trace_rel(x, 6, 12).unwrap();
            assert_eq!(ctx.trace_sub(rel, 6).unwrap(), ctx.trace_abs(x));
            let rel3 = ctx.trace_rel(x, 3, 12).unwrap();
            assert_eq!(ctx.trace_sub(rel3, 3).unwrap(), ctx.trace_abs(x));
        }
    }

    #[test]
    fn subfields_closed() {
        for n in [4u32, 6, 8, 12] {
            let ctx = FieldContext::new(n, None).unwrap();
            for j in (1..=n).filter(|j| n % j == 0) {
                let sub = ctx.subfield_elements(j).unwrap();
                assert_eq!(sub.len(), 1 << j);
                assert_eq!(sub[0], FieldElement::ZERO);
                let set: std::collections::HashSet<_> = sub.iter().copied().collect();
                assert_eq!(set.len(), sub.len());
                for &a in sub.iter().take(40) {
                    assert!(ctx.in_subfield(a, j));
                    if !a.is_zero() {
                        assert!(set.contains(&ctx.inv(a).unwrap()));
                    }
                    for &b in sub.iter().take(40) {
                        assert!(set.contains(&(a + b)));
                        assert!(set.contains(&ctx.mul(a, b)));
                    }
                }
            }
            assert!(ctx.subfield_elements(5).is_err() || n % 5 == 0);
        }
        let ctx = FieldContext::new(4, None).unwrap();
        assert_eq!(ctx.subfield_elements(1).unwrap(), vec![FieldElement::ZERO, FieldElement::ONE]);
        assert_eq!(ctx.subfield_elements(4).unwrap().len(), 16);
    }

    #[test]
    fn params_examples() {
        let p = derive_params(4, 1).unwrap();
        assert_eq!((p.m, p.d, p.d_prime, p.case), (2, 1, 1, Case::EvenM));
        let p = derive_params(6, 1).unwrap();
        assert_eq!((p.m, p.d, p.d_prime, p.case), (3, 1, 2, Case::BothOdd));
        let p = derive_params(6, 2).unwrap();
        assert_eq!((p.m, p.d, p.d_prime, p.case), (3, 1, 1, Case::EvenK));
        assert!(derive_params(4, 2).is_err());
        assert!(derive_params(4, 4).is_err());
        assert!(derive_params(4, 0).is_err());
        assert!(derive_params(5, 1).is_err());
    }

    #[test]
    fn case_iff_d_prime_doubles() {
        for n in (4..=24).step_by(2) {
            for k in 1..n {
                if k == n / 2 {
                    continue;
                }
                let p = derive_params(n, k).unwrap();
                assert_eq!(p.case == Case::BothOdd, p.d_prime == 2 * p.d, "n={n} k={k}");
                assert!(p.d_prime == p.d || p.d_prime == 2 * p.d);
                assert_eq!(p.s % 2, 0);
            }
        }
    }
}
