//! The exponential sums
//!
//! ```text
//! T(alpha, beta)        = sum_x (-1)^(Tr_1^m(alpha x^(2^m+1)) + Tr_1^n(beta x^(2^k+1)))
//! S(alpha, beta, gamma) = sum_x (-1)^(Tr_1^m(alpha x^(2^m+1)) + Tr_1^n(beta x^(2^k+1) + gamma x))
//! ```
//!
//! evaluated exhaustively, plus the moment, Artin-Schreier and sign-law
//! cross-checks. Closed-form tables live in [`tables`].
//!
//! Sweeps work on discrete logs: with `x = pi^i`, the summand only needs
//! `Tr_1^n(pi^(lb + i(2^k+1)))` and `Tr_1^m(pi^((a+i)(2^m+1)))`, both table
//! lookups. For the full S-spectrum the `gamma` sweep of one `(alpha, beta)` is a
//! Walsh-Hadamard transform: `gamma -> (Tr(gamma e_j))_j` is a bijection onto
//! GF(2)^n, so the multiset over `gamma` equals the Walsh spectrum.

pub mod tables;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::distribution::{DenseHistogram, ValueDistribution};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::{FieldContext, FieldElement, Params};
use crate::formula::{p2, to_i128};
use crate::linearized::RankProfile;

/// Precomputed tables for one `(ctx, params)`.
pub struct SumKernel<'a> {
    ctx: &'a FieldContext,
    params: Params,
    /// `Tr_1^n(pi^j)` for `j < 2^n - 1`.
    trn: Vec<u8>,
    /// `Tr_1^m(pi^(t(2^m+1)))` for `t < 2^m - 1`.
    trm: Vec<u8>,
    /// `i(2^k+1) mod (2^n-1)`.
    ek: Vec<u32>,
    /// `i mod (2^m-1)`, the exponent of `x^(2^m+1)` in units of the subfield generator.
    em: Vec<u32>,
    /// Masks `u` with `Tr(pi^j x) = parity(u & x)`, built on first use.
    gamma_mask: OnceLock<Vec<u32>>,
}

impl<'a> SumKernel<'a> {
    pub fn new(ctx: &'a FieldContext, params: &Params) -> Self {
        let order = ctx.order();
        let sub_order = (1u32 << params.m) - 1;
        let trn: Vec<u8> = (0..order).map(|j| ctx.trace_abs(FieldElement(ctx.exp_raw(j)))).collect();
        let step = (1u64 << params.m) + 1;
        let trm = (0..sub_order)
            .map(|t| {
                let y = ctx.exp(t as u64 * step);
                ctx.trace_sub(y, params.m).expect("y lies in GF(2^m)")
            })
            .collect();
        let kk = (1u64 << params.k) + 1;
        let ek = (0..order as u64).map(|i| ((i * kk) % order as u64) as u32).collect();
        let em = (0..order).map(|i| i % sub_order).collect();
        SumKernel { ctx, params: *params, trn, trm, ek, em, gamma_mask: OnceLock::new() }
    }

    pub fn ctx(&self) -> &FieldContext {
        self.ctx
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Exponent `a` with `alpha = pi^(a(2^m+1))`, `None` for zero.
    pub fn alpha_exponent(&self, alpha: FieldElement) -> Result<Option<u32>> {
        if !self.ctx.in_subfield(alpha, self.params.m) {
            return Err(Error::NotInSubfield { value: alpha.0, degree: self.params.m });
        }
        let step = (1u32 << self.params.m) + 1;
        Ok(self.ctx.log(alpha).map(|l| l / step))
    }

    /// The summand bit `f(pi^i)` for exponents `a` (alpha) and `lb` (log beta).
    #[inline]
    pub(crate) fn f_bit(&self, a: Option<u32>, lb: Option<u32>, i: usize) -> u8 {
        let order = self.ctx.order();
        let mut bit = 0u8;
        if let Some(a) = a {
            let t = a + self.em[i];
            let sub = self.trm.len() as u32;
            bit ^= self.trm[(if t >= sub { t - sub } else { t }) as usize];
        }
        if let Some(lb) = lb {
            let j = lb + self.ek[i];
            bit ^= self.trn[(if j >= order { j - order } else { j }) as usize];
        }
        bit
    }

    /// `Tr_1^n(pi^j)`.
    #[inline]
    pub(crate) fn trace_at_log(&self, j: u32) -> u8 {
        self.trn[j as usize]
    }

    /// `T` from exponent form.
    pub(crate) fn t_raw(&self, a: Option<u32>, lb: Option<u32>) -> i64 {
        let order = self.ctx.order() as usize;
        let ones: i64 = (0..order).map(|i| self.f_bit(a, lb, i) as i64).sum();
        1 + order as i64 - 2 * ones
    }

    /// `S` from exponent form; `lg` is the log of gamma.
    pub(crate) fn s_raw(&self, a: Option<u32>, lb: Option<u32>, lg: Option<u32>) -> i64 {
        let Some(lg) = lg else {
            return self.t_raw(a, lb);
        };
        let order = self.ctx.order();
        let mut ones = 0i64;
        for i in 0..order as usize {
            let j = lg + i as u32;
            let lin = self.trn[(if j >= order { j - order } else { j }) as usize];
            ones += (self.f_bit(a, lb, i) ^ lin) as i64;
        }
        1 + order as i64 - 2 * ones
    }

    pub fn t(&self, alpha: FieldElement, beta: FieldElement) -> Result<i64> {
        Ok(self.t_raw(self.alpha_exponent(alpha)?, self.ctx.log(beta)))
    }

    pub fn s(&self, alpha: FieldElement, beta: FieldElement, gamma: FieldElement) -> Result<i64> {
        Ok(self.s_raw(self.alpha_exponent(alpha)?, self.ctx.log(beta), self.ctx.log(gamma)))
    }

    /// `S(alpha, beta, gamma)` for all `gamma`, indexed in canonical element order.
    pub fn s_column(&self, alpha: FieldElement, beta: FieldElement) -> Result<Vec<i64>> {
        Ok(self.s_over_gamma(self.alpha_exponent(alpha)?, self.ctx.log(beta)))
    }

    pub(crate) fn s_over_gamma(&self, a: Option<u32>, lb: Option<u32>) -> Vec<i64> {
        let walsh = self.walsh(a, lb);
        let masks = self.gamma_mask.get_or_init(|| {
            // bit b of the mask for pi^j is Tr(pi^(j+b))
            let ctx = self.ctx;
            (0..ctx.order())
                .map(|j| {
                    let g = FieldElement(ctx.exp_raw(j));
                    (0..ctx.n())
                        .fold(0u32, |acc, b| acc | ((ctx.trace_abs(ctx.mul(g, FieldElement(1 << b))) as u32) << b))
                })
                .collect()
        });
        let mut out = Vec::with_capacity(walsh.len());
        out.push(walsh[0]);
        out.extend(masks.iter().map(|&mask| walsh[mask as usize]));
        out
    }

    /// Walsh spectrum of `f` indexed by linear-functional mask.
    fn walsh(&self, a: Option<u32>, lb: Option<u32>) -> Vec<i64> {
        let size = self.ctx.size();
        let mut v = vec![1i64; size]; // f(0) = 0
        for i in 0..self.ctx.order() as usize {
            let x = self.ctx.exp_raw(i as u32) as usize;
            v[x] = 1 - 2 * self.f_bit(a, lb, i) as i64;
        }
        fwht(&mut v);
        v
    }

    pub(crate) fn pair_count(&self) -> usize {
        (1usize << self.params.m) * self.ctx.size()
    }

    /// Pair index `p = alpha_index * 2^n + beta_index` to exponent form.
    #[inline]
    pub(crate) fn pair(&self, p: usize) -> (Option<u32>, Option<u32>) {
        let size = self.ctx.size();
        let (ai, bi) = (p / size, p % size);
        let a = (ai > 0).then(|| ai as u32 - 1);
        let lb = (bi > 0).then(|| bi as u32 - 1);
        (a, lb)
    }
}

/// In-place fast Walsh-Hadamard transform (unnormalized).
pub fn fwht(v: &mut [i64]) {
    let mut h = 1;
    while h < v.len() {
        for chunk in v.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

pub fn t_sum(ctx: &FieldContext, params: &Params, alpha: FieldElement, beta: FieldElement) -> Result<i64> {
    SumKernel::new(ctx, params).t(alpha, beta)
}

pub fn s_sum(
    ctx: &FieldContext,
    params: &Params,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> Result<i64> {
    SumKernel::new(ctx, params).s(alpha, beta, gamma)
}

/// `T(alpha, beta)` for every pair, in the order `alpha_index * 2^n + beta_index`
/// (the order used by [`crate::linearized::rank_profile`] with the origin first).
pub fn t_values(kernel: &SumKernel, exec: Exec) -> Vec<i64> {
    exec.map_collect(0..kernel.pair_count(), |p| {
        let (a, lb) = kernel.pair(p);
        kernel.t_raw(a, lb)
    })
}

pub fn t_spectrum(kernel: &SumKernel, exec: Exec) -> ValueDistribution {
    let q = kernel.ctx.size() as i64;
    exec.fold(
        0..kernel.pair_count(),
        || DenseHistogram::new(q),
        |mut h, p| {
            let (a, lb) = kernel.pair(p);
            h.add(kernel.t_raw(a, lb));
            h
        },
        DenseHistogram::merge,
    )
    .into_distribution()
}

pub fn s_spectrum(kernel: &SumKernel, exec: Exec) -> ValueDistribution {
    let q = kernel.ctx.size() as i64;
    exec.fold(
        0..kernel.pair_count(),
        || DenseHistogram::new(q),
        |mut h, p| {
            let (a, lb) = kernel.pair(p);
            for v in kernel.walsh(a, lb) {
                h.add(v);
            }
            h
        },
        DenseHistogram::merge,
    )
    .into_distribution()
}

/// Multiset `{S(alpha, beta, gamma) : alpha, beta}` for a fixed `gamma`.
pub fn s_slice(kernel: &SumKernel, gamma: FieldElement, exec: Exec) -> ValueDistribution {
    let q = kernel.ctx.size() as i64;
    let lg = kernel.ctx.log(gamma);
    exec.fold(
        0..kernel.pair_count(),
        || DenseHistogram::new(q),
        |mut h, p| {
            let (a, lb) = kernel.pair(p);
            h.add(kernel.s_raw(a, lb, lg));
            h
        },
        DenseHistogram::merge,
    )
    .into_distribution()
}

/// Multiset `{T(alpha, beta) : beta}` for a fixed `alpha`.
pub fn t_row(kernel: &SumKernel, alpha: FieldElement) -> Result<ValueDistribution> {
    let a = kernel.alpha_exponent(alpha)?;
    let mut out = ValueDistribution::new();
    for bi in 0..kernel.ctx.size() {
        let lb = (bi > 0).then(|| bi as u32 - 1);
        out.add(kernel.t_raw(a, lb), 1);
    }
    Ok(out)
}

/// Per-pair check of the linear-term distribution: for each `(alpha, beta) != (0,0)`
/// of rank `r`, the `gamma` sweep has `q0^s - q0^r` zeros and
/// `(q0^r +- q0^(r/2))/2` values `+-q0^(s - r/2)`. Returns the pairs that fail.
pub fn linear_term_profile_failures(kernel: &SumKernel, ranks: &RankProfile, exec: Exec) -> Vec<(usize, usize)> {
    let p = kernel.params;
    let size = kernel.ctx.size();
    let fails = exec.map_collect(1..kernel.pair_count(), |idx| {
        let (a, lb) = kernel.pair(idx);
        let rank = ranks.records[idx - 1].rank;
        let qr = 1i64 << (p.d * rank);
        let qr2 = 1i64 << (p.d * rank / 2);
        let mag = 1i64 << (p.d * (p.s - rank / 2));
        let mut counts = (0i64, 0i64, 0i64, 0i64); // zero, plus, minus, other
        for v in kernel.walsh(a, lb) {
            match v {
                0 => counts.0 += 1,
                v if v == mag => counts.1 += 1,
                v if v == -mag => counts.2 += 1,
                _ => counts.3 += 1,
            }
        }
        let ok = counts == ((1i64 << p.n) - qr, (qr + qr2) / 2, (qr - qr2) / 2, 0);
        (!ok).then_some((idx / size, idx % size))
    });
    fails.into_iter().flatten().collect()
}

/// Pairs whose `|T|` is not `0` or `2^(m + i d / 2)` where `rank = s - i`.
pub fn rank_value_failures(params: &Params, t: &[i64], ranks: &RankProfile) -> Vec<usize> {
    let mut out = Vec::new();
    for (idx, r) in ranks.records.iter().enumerate() {
        let v = t[idx + 1];
        let i = params.s - r.rank;
        let mag = 1i64 << (params.m + i * params.d / 2);
        if v != 0 && v.abs() != mag {
            out.push(idx + 1);
        }
    }
    out
}

/// `n_{i,eps}`: pairs `(alpha, beta) != (0,0)` with `T = eps 2^(m + i d / 2)`,
/// keyed by `(i, eps)`, plus the zero count `omega` under key `(u32::MAX, 0)`.
pub fn signed_counts(params: &Params, t: &[i64]) -> BTreeMap<(u32, i8), u64> {
    let mut out = BTreeMap::new();
    for &v in &t[1..] {
        let key = if v == 0 {
            (u32::MAX, 0)
        } else {
            let e = 63 - v.unsigned_abs().leading_zeros();
            let i = e.checked_sub(params.m).map_or(u32::MAX - 1, |x| 2 * x / params.d);
            (i, v.signum() as i8)
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

/// Zero count of the S-spectrum from the brute-force rank and sign counts.
pub fn xi_from_counts(params: &Params, ranks: &RankProfile, signed: &BTreeMap<(u32, i8), u64>) -> i128 {
    let (n, d) = (params.n, params.d);
    let q = 1i128 << n;
    if params.is_both_odd() {
        let n21 = signed.get(&(2, 1)).copied().unwrap_or(0) as i128;
        let n4m = signed.get(&(4, -1)).copied().unwrap_or(0) as i128;
        q - 1 + (q - (1i128 << (n - 2 * d))) * n21 + (q - (1i128 << (n - 4 * d))) * n4m
    } else {
        q - 1 + (q - (1i128 << (n - 2 * d))) * ranks.n_i(2) as i128
    }
}

/// The closed form for the zero count of the S-spectrum.
pub fn xi_closed_form(params: &Params) -> i128 {
    let (n, m, d) = (params.n as i64, params.m as i64, params.d as i64);
    let inner = if params.is_both_odd() {
        p2(3 * m - d) - p2(3 * m - 2 * d) + p2(3 * m - 3 * d) - p2(3 * m - 4 * d) + p2(3 * m - 5 * d) + p2(n - d)
            - p2(n - 2 * d + 1)
            + p2(n - 3 * d)
            - p2(n - 4 * d)
            + p2(0)
    } else {
        p2(3 * m - d) - p2(n - 2 * d) + p2(0)
    };
    to_i128(&(inner * (p2(n) - p2(0)))).expect("xi is an integer")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentReport {
    pub m1: i128,
    pub m2: i128,
    pub m3: i128,
    pub expected1: i128,
    pub expected2: i128,
    pub expected3: i128,
    /// Solution counts of the degree-2 and degree-3 systems, by enumeration.
    pub solutions2: Option<u64>,
    pub solutions3: Option<u64>,
}

impl MomentReport {
    pub fn holds(&self) -> bool {
        let base = self.expected1;
        self.m1 == self.expected1
            && self.m2 == self.expected2
            && self.m3 == self.expected3
            && self.solutions2.is_none_or(|c| c as i128 * base == self.m2)
            && self.solutions3.is_none_or(|c| c as i128 * base == self.m3)
    }
}

/// Expected `(sum T, sum T^2, sum T^3)`.
pub fn moment_closed_forms(params: &Params) -> (i128, i128, i128) {
    let (n, m, d) = (params.n, params.m, params.d);
    let base = 1i128 << (3 * m);
    let q = 1i128 << n;
    if params.is_both_odd() {
        let m2 = (1i128 << (n + d)) + q - (1i128 << d);
        let m3 = (1i128 << (n + 3 * d)) + q - (1i128 << (3 * d));
        (base, base * m2, base * m3)
    } else {
        (base, 1i128 << (5 * m), base * ((1i128 << (n + d)) + q - (1i128 << d)))
    }
}

/// Moments of the T-spectrum against the closed forms; the solution counts of
/// `x^(2^m+1)+y^(2^m+1)(+z^(2^m+1)) = 0`, `x^(2^k+1)+y^(2^k+1)(+z^(2^k+1)) = 0`
/// are enumerated for `n <= max_enum_n`.
pub fn moments(ctx: &FieldContext, params: &Params, spectrum: &ValueDistribution, max_enum_n: u32) -> MomentReport {
    let (e1, e2, e3) = moment_closed_forms(params);
    let (solutions2, solutions3) = if params.n <= max_enum_n {
        let (a, b) = solution_counts(ctx, params);
        (Some(a), Some(b))
    } else {
        (None, None)
    };
    MomentReport {
        m1: spectrum.moment(1),
        m2: spectrum.moment(2),
        m3: spectrum.moment(3),
        expected1: e1,
        expected2: e2,
        expected3: e3,
        solutions2,
        solutions3,
    }
}

fn solution_counts(ctx: &FieldContext, params: &Params) -> (u64, u64) {
    let um = (1u64 << params.m) + 1;
    let uk = (1u64 << params.k) + 1;
    let pm: Vec<u32> = ctx.elements().map(|x| ctx.pow(x, um).0).collect();
    let pk: Vec<u32> = ctx.elements().map(|x| ctx.pow(x, uk).0).collect();
    // number of z with (z^(2^m+1), z^(2^k+1)) equal to a given pair
    let mut by_image = std::collections::HashMap::new();
    for (a, b) in pm.iter().zip(&pk) {
        *by_image.entry((*a, *b)).or_insert(0u64) += 1;
    }
    let mut two = 0u64;
    let mut three = 0u64;
    for i in 0..pm.len() {
        for j in 0..pm.len() {
            let key = (pm[i] ^ pm[j], pk[i] ^ pk[j]);
            two += (key == (0, 0)) as u64;
            three += by_image.get(&key).copied().unwrap_or(0);
        }
    }
    (two, three)
}

/// Affine points of `alpha' x^(2^m+1) + beta x^(2^k+1) = y^(2^d) + y`.
pub struct ArtinSchreier<'a> {
    ctx: &'a FieldContext,
    params: Params,
    /// Number of `y` with `y^(2^d) + y = c`, indexed by `c`.
    fibre: Vec<u32>,
}

impl<'a> ArtinSchreier<'a> {
    pub fn new(ctx: &'a FieldContext, params: &Params) -> Result<Self> {
        if !params.is_both_odd() {
            return Err(Error::RequiresBothOdd);
        }
        let mut fibre = vec![0u32; ctx.size()];
        for y in ctx.elements() {
            fibre[(ctx.frobenius(y, params.d as i64) + y).0 as usize] += 1;
        }
        Ok(ArtinSchreier { ctx, params: *params, fibre })
    }

    pub fn points(&self, alpha_prime: FieldElement, beta: FieldElement) -> Result<u64> {
        if alpha_prime.is_zero() && beta.is_zero() {
            return Err(Error::ZeroPair);
        }
        let um = (1u64 << self.params.m) + 1;
        let uk = (1u64 << self.params.k) + 1;
        Ok(self
            .ctx
            .elements()
            .map(|x| {
                let c = self.ctx.mul(alpha_prime, self.ctx.pow(x, um)) + self.ctx.mul(beta, self.ctx.pow(x, uk));
                self.fibre[c.0 as usize] as u64
            })
            .sum())
    }
}

pub fn artin_schreier_points(
    ctx: &FieldContext,
    params: &Params,
    alpha_prime: FieldElement,
    beta: FieldElement,
) -> Result<u64> {
    ArtinSchreier::new(ctx, params)?.points(alpha_prime, beta)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ArtinSchreierReport {
    pub pairs: u64,
    /// Pairs where `N != 2^n + (2^d - 1) T(Tr_m^n(alpha'), beta)`.
    pub count_failures: u64,
    /// Pairs where `N` is not `2^d mod (2^(2d) - 1)`.
    pub congruence_failures: u64,
}

/// Exhaustive sweep over all `(alpha', beta) != (0,0)`.
pub fn artin_schreier_sweep(kernel: &SumKernel, exec: Exec) -> Result<ArtinSchreierReport> {
    let ctx = kernel.ctx;
    let p = kernel.params;
    let curve = ArtinSchreier::new(ctx, &p)?;
    let size = ctx.size();
    let elems: Vec<FieldElement> = ctx.elements().collect();
    let modulus = (1u64 << (2 * p.d)) - 1;
    let report = exec.fold(
        1..size * size,
        ArtinSchreierReport::default,
        |mut acc, idx| {
            let (ap, b) = (elems[idx / size], elems[idx % size]);
            let alpha = ctx.trace_rel(ap, p.m, p.n).expect("m divides n");
            let n_pts = curve.points(ap, b).expect("nonzero pair") as i64;
            let t = kernel.t(alpha, b).expect("trace lies in the subfield");
            acc.pairs += 1;
            acc.count_failures += (n_pts != (1i64 << p.n) + ((1i64 << p.d) - 1) * t) as u64;
            acc.congruence_failures += (n_pts as u64 % modulus != (1u64 << p.d) % modulus) as u64;
            acc
        },
        |a, b| ArtinSchreierReport {
            pairs: a.pairs + b.pairs,
            count_failures: a.count_failures + b.count_failures,
            congruence_failures: a.congruence_failures + b.congruence_failures,
        },
    );
    Ok(report)
}

/// For `d' = 2d`: pairs `(alpha, beta) != (0,0)` violating either
/// `T = 1 mod (2^d+1)` or the value law `-2^m, 2^(m+d), -2^(m+2d)` at ranks
/// `s, s-2, s-4`.
pub fn sign_law_failures(params: &Params, t: &[i64], ranks: &RankProfile) -> Result<Vec<usize>> {
    if !params.is_both_odd() {
        return Err(Error::RequiresBothOdd);
    }
    let (m, d, s) = (params.m, params.d, params.s);
    let modulus = (1i64 << d) + 1;
    let mut out = Vec::new();
    for (idx, r) in ranks.records.iter().enumerate() {
        let v = t[idx + 1];
        let expected = match s - r.rank {
            0 => -(1i64 << m),
            2 => 1i64 << (m + d),
            4 => -(1i64 << (m + 2 * d)),
            _ => i64::MIN,
        };
        if v.rem_euclid(modulus) != 1 || v != expected {
            out.push(idx + 1);
        }
    }
    Ok(out)
}

/// For `d' = 2d`: number of `(alpha, beta, omega)` with `omega` in GF(2^d)* and
/// `T(omega alpha, omega beta) != T(alpha, beta)`.
pub fn scaling_failures(kernel: &SumKernel, t: &[i64], exec: Exec) -> Result<u64> {
    let ctx = kernel.ctx;
    let p = kernel.params;
    if !p.is_both_odd() {
        return Err(Error::RequiresBothOdd);
    }
    let omegas = ctx.subfield_elements(p.d)?;
    let alphas = ctx.subfield_elements(p.m)?;
    let size = ctx.size();
    let elems: Vec<FieldElement> = ctx.elements().collect();
    Ok(exec.fold(
        0..kernel.pair_count(),
        || 0u64,
        |acc, idx| {
            let (alpha, beta) = (alphas[idx / size], elems[idx % size]);
            let bad = omegas[1..]
                .iter()
                .filter(|&&w| kernel.t(ctx.mul(w, alpha), ctx.mul(w, beta)).expect("subfield") != t[idx])
                .count();
            acc + bad as u64
        },
        |a, b| a + b,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linearized::rank_profile;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn setup(n: u32, k: u32) -> (FieldContext, Params) {
        (FieldContext::new(n, None).unwrap(), Params::new(n, k).unwrap())
    }

    fn naive_s(ctx: &FieldContext, p: &Params, a: FieldElement, b: FieldElement, g: FieldElement) -> i64 {
        let um = (1u64 << p.m) + 1;
        let uk = (1u64 << p.k) + 1;
        ctx.elements()
            .map(|x| {
                let e = ctx.trace_sub(ctx.mul(a, ctx.pow(x, um)), p.m).unwrap()
                    ^ ctx.trace_abs(ctx.mul(b, ctx.pow(x, uk)) + ctx.mul(g, x));
                1 - 2 * e as i64
            })
            .sum()
    }

    #[test]
    fn fast_sums_match_naive_definition() {
        let mut rng = StdRng::seed_from_u64(7);
        for (n, k) in [(4, 1), (6, 1), (6, 2), (8, 3)] {
            let (ctx, p) = setup(n, k);
            let kern = SumKernel::new(&ctx, &p);
            let alphas = ctx.subfield_elements(p.m).unwrap();
            for _ in 0..100 {
                let a = alphas[rng.gen_range(0..alphas.len())];
                let b = FieldElement(rng.gen_range(0..ctx.size() as u32));
                let g = FieldElement(rng.gen_range(0..ctx.size() as u32));
                assert_eq!(kern.s(a, b, g).unwrap(), naive_s(&ctx, &p, a, b, g));
                assert_eq!(kern.s(a, b, FieldElement::ZERO).unwrap(), kern.t(a, b).unwrap());
                let over = kern.s_over_gamma(kern.alpha_exponent(a).unwrap(), ctx.log(b));
                assert_eq!(over[ctx.index_of(g)], kern.s(a, b, g).unwrap());
            }
        }
    }

    #[test]
    fn trivial_values() {
        let (ctx, p) = setup(6, 1);
        let kern = SumKernel::new(&ctx, &p);
        assert_eq!(kern.t(FieldElement::ZERO, FieldElement::ZERO).unwrap(), 64);
        assert_eq!(kern.s(FieldElement::ZERO, FieldElement::ZERO, FieldElement::ZERO).unwrap(), 64);
        for g in ctx.elements().skip(1) {
            assert_eq!(kern.s(FieldElement::ZERO, FieldElement::ZERO, g).unwrap(), 0);
        }
        assert!(kern.t(ctx.pi(), FieldElement::ONE).is_err());
    }

    #[test]
    fn spectra_small() {
        let (ctx, p) = setup(4, 1);
        let kern = SumKernel::new(&ctx, &p);
        let t = t_spectrum(&kern, Exec::Sequential);
        assert_eq!(t.to_string(), "{16:1, 4:25, 0:30, -4:3, -8:5}");
        let s = s_spectrum(&kern, Exec::Parallel);
        assert_eq!(s.to_string(), "{16:1, 8:105, 4:280, 0:435, -4:168, -8:35}");
        assert_eq!(s.get(0) as i128, xi_closed_form(&p));

        let (ctx, p) = setup(6, 1);
        let kern = SumKernel::new(&ctx, &p);
        assert_eq!(t_spectrum(&kern, Exec::Parallel).to_string(), "{64:1, 16:210, -8:280, -32:21}");
        let (ctx, p) = setup(6, 2);
        let kern = SumKernel::new(&ctx, &p);
        assert_eq!(t_spectrum(&kern, Exec::Parallel).to_string(), "{64:1, 8:189, 0:252, -8:7, -16:63}");
    }

    #[test]
    fn s_spectrum_agrees_with_direct_sweep() {
        let (ctx, p) = setup(4, 1);
        let kern = SumKernel::new(&ctx, &p);
        let mut direct = ValueDistribution::new();
        for a in ctx.subfield_elements(2).unwrap() {
            for b in ctx.elements() {
                for g in ctx.elements() {
                    direct.add(kern.s(a, b, g).unwrap(), 1);
                }
            }
        }
        assert_eq!(direct, s_spectrum(&kern, Exec::Sequential));
    }

    #[test]
    fn moment_identities() {
        for (n, k) in [(4, 1), (6, 1), (6, 2), (8, 1), (8, 2), (8, 3)] {
            let (ctx, p) = setup(n, k);
            let kern = SumKernel::new(&ctx, &p);
            let spec = t_spectrum(&kern, Exec::Parallel);
            let rep = moments(&ctx, &p, &spec, 8);
            assert!(rep.holds(), "{n},{k}: {rep:?}");
        }
        let (ctx, p) = setup(4, 1);
        let rep = moments(&ctx, &p, &t_spectrum(&SumKernel::new(&ctx, &p), Exec::Parallel), 8);
        assert_eq!((rep.m1, rep.m2, rep.m3), (64, 1024, 2944));
        let (ctx, p) = setup(6, 1);
        let rep = moments(&ctx, &p, &t_spectrum(&SumKernel::new(&ctx, &p), Exec::Parallel), 8);
        assert_eq!((rep.m1, rep.m2, rep.m3), (512, 97280, 290816));
    }

    #[test]
    fn artin_schreier_examples() {
        let (ctx, p) = setup(6, 1);
        let kern = SumKernel::new(&ctx, &p);
        let curve = ArtinSchreier::new(&ctx, &p).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for ap in ctx.elements().step_by(7).skip(1) {
            for b in ctx.elements().step_by(5) {
                let alpha = ctx.trace_rel(ap, 3, 6).unwrap();
                let t = kern.t(alpha, b).unwrap();
                assert_eq!(curve.points(ap, b).unwrap() as i64, 64 + t);
                seen.insert((t, 64 + t));
            }
        }
        assert!(seen.contains(&(-8, 56)));
        assert!(seen.contains(&(16, 80)));
        let (ctx, p) = setup(4, 1);
        assert_eq!(artin_schreier_points(&ctx, &p, FieldElement::ONE, FieldElement::ONE), Err(Error::RequiresBothOdd));
    }

    #[test]
    fn both_odd_laws() {
        let (ctx, p) = setup(6, 1);
        let kern = SumKernel::new(&ctx, &p);
        let t = t_values(&kern, Exec::Parallel);
        let ranks = rank_profile(&ctx, &p, Exec::Parallel).unwrap();
        assert!(sign_law_failures(&p, &t, &ranks).unwrap().is_empty());
        assert_eq!(scaling_failures(&kern, &t, Exec::Parallel).unwrap(), 0);
        assert!(rank_value_failures(&p, &t, &ranks).is_empty());
        let signed = signed_counts(&p, &t);
        assert_eq!(xi_from_counts(&p, &ranks, &signed), xi_closed_form(&p));
    }

    #[test]
    fn linear_term_profile() {
        for (n, k) in [(4, 1), (6, 1), (6, 2)] {
            let (ctx, p) = setup(n, k);
            let kern = SumKernel::new(&ctx, &p);
            let ranks = rank_profile(&ctx, &p, Exec::Parallel).unwrap();
            assert!(linear_term_profile_failures(&kern, &ranks, Exec::Parallel).is_empty());
            let t = t_values(&kern, Exec::Parallel);
            assert!(rank_value_failures(&p, &t, &ranks).is_empty());
        }
    }

    #[test]
    fn equidistribution_over_alpha_and_gamma() {
        let (ctx, p) = setup(6, 2);
        let kern = SumKernel::new(&ctx, &p);
        let base = t_row(&kern, FieldElement::ONE).unwrap();
        for a in ctx.subfield_elements(3).unwrap().into_iter().skip(1) {
            assert_eq!(t_row(&kern, a).unwrap(), base);
        }
        let one = s_slice(&kern, FieldElement::ONE, Exec::Parallel);
        for g in ctx.elements().skip(1).step_by(9) {
            assert_eq!(s_slice(&kern, g, Exec::Parallel), one);
        }
    }
}
