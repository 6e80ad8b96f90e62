//! Rank analysis of the quadratic forms behind the exponential sums.
//!
//! For `alpha` in GF(2^m) and `beta` in GF(2^n) the bilinear form of
//! `Tr_d^m(alpha x^(2^m+1)) + Tr_d^n(beta x^(2^k+1))` has radical equal to the
//! zero set of the `2^d`-linearized polynomial
//!
//! ```text
//! phi(x) = alpha x^(2^m) + beta x^(2^k) + beta^(2^(n-k)) x^(2^(n-k)).
//! ```
//!
//! The rank `r` over GF(2^d) is `s - dim ker phi`. Kernels are found by
//! enumerating the whole field, so no basis has to be chosen.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::{FieldContext, FieldElement, Params};
use crate::formula::{p2, to_count, Ratio};

fn check_alpha(ctx: &FieldContext, params: &Params, alpha: FieldElement) -> Result<()> {
    if ctx.in_subfield(alpha, params.m) {
        Ok(())
    } else {
        Err(Error::NotInSubfield { value: alpha.0, degree: params.m })
    }
}

/// `phi_{alpha,beta}(x)`.
pub fn phi_eval(
    ctx: &FieldContext,
    params: &Params,
    alpha: FieldElement,
    beta: FieldElement,
    x: FieldElement,
) -> Result<FieldElement> {
    check_alpha(ctx, params, alpha)?;
    let (m, k, n) = (params.m as i64, params.k as i64, params.n as i64);
    let t1 = ctx.mul(alpha, ctx.frobenius(x, m));
    let t2 = ctx.mul(beta, ctx.frobenius(x, k));
    let t3 = ctx.mul(ctx.frobenius(beta, n - k), ctx.frobenius(x, n - k));
    Ok(t1 + t2 + t3)
}

/// Number of zeros of `phi_{alpha,beta}` in GF(2^n), by enumeration.
fn phi_zero_count(ctx: &FieldContext, params: &Params, alpha: FieldElement, beta: FieldElement) -> u64 {
    let (m, k, n) = (params.m as i64, params.k as i64, params.n as i64);
    let order = ctx.order();
    let la = ctx.log(alpha);
    let lb = ctx.log(beta);
    let lb_twist = lb.map(|l| ctx.frobenius_log(l, n - k));
    let add = |a: u32, b: u32| {
        let s = a + b;
        if s >= order {
            s - order
        } else {
            s
        }
    };
    let mut zeros = 1u64; // x = 0
    for i in 0..order {
        let mut acc = 0u32;
        if let Some(la) = la {
            acc ^= ctx.exp_raw(add(la, ctx.frobenius_log(i, m)));
        }
        if let (Some(lb), Some(lt)) = (lb, lb_twist) {
            acc ^= ctx.exp_raw(add(lb, ctx.frobenius_log(i, k)));
            acc ^= ctx.exp_raw(add(lt, ctx.frobenius_log(i, n - k)));
        }
        zeros += (acc == 0) as u64;
    }
    zeros
}

/// The zero set of `phi_{alpha,beta}`.
pub fn phi_kernel(
    ctx: &FieldContext,
    params: &Params,
    alpha: FieldElement,
    beta: FieldElement,
) -> Result<Vec<FieldElement>> {
    check_alpha(ctx, params, alpha)?;
    let mut out = Vec::new();
    for x in ctx.elements() {
        if phi_eval(ctx, params, alpha, beta, x)?.is_zero() {
            out.push(x);
        }
    }
    Ok(out)
}

/// `(kernel dimension over GF(2^d), rank)` for `(alpha, beta) != (0, 0)`.
pub fn rank_of(ctx: &FieldContext, params: &Params, alpha: FieldElement, beta: FieldElement) -> Result<(u32, u32)> {
    check_alpha(ctx, params, alpha)?;
    if alpha.is_zero() && beta.is_zero() {
        return Err(Error::ZeroPair);
    }
    let zeros = phi_zero_count(ctx, params, alpha, beta);
    kernel_dim_from_zeros(params, zeros).map(|dim| (dim, params.s - dim))
}

fn kernel_dim_from_zeros(params: &Params, zeros: u64) -> Result<u32> {
    let bits = zeros.trailing_zeros();
    if !zeros.is_power_of_two() || !bits.is_multiple_of(params.d) {
        return Err(Error::Verification {
            check: "kernel of phi is a GF(2^d)-space".into(),
            expected: format!("a power of {}", params.q0),
            found: zeros.to_string(),
        });
    }
    Ok(bits / params.d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRecord {
    pub alpha_index: usize,
    pub beta_index: usize,
    pub kernel_dim: u32,
    pub rank: u32,
}

/// Ranks of every `(alpha, beta) != (0, 0)`, with aggregate counts `n_i`
/// (number of pairs of rank `s - i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub n: u32,
    pub k: u32,
    pub records: Vec<RankRecord>,
    pub counts: BTreeMap<u32, u64>,
}

#[derive(Serialize)]
struct RankProfileWire {
    n: u32,
    k: u32,
    n0: u64,
    n2: u64,
    n4: u64,
}

impl RankProfile {
    /// `n_i`, the number of pairs with rank `s - i`.
    pub fn n_i(&self, i: u32) -> u64 {
        self.counts.get(&i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Observed co-ranks `i` (rank = s - i).
    pub fn observed_coranks(&self) -> Vec<u32> {
        self.counts.keys().copied().collect()
    }

    pub fn rank_at(&self, alpha_index: usize, beta_index: usize, size: usize) -> Option<u32> {
        let idx = (alpha_index * size + beta_index).checked_sub(1)?;
        self.records.get(idx).map(|r| r.rank)
    }

    pub fn to_json(&self) -> String {
        let wire = RankProfileWire { n: self.n, k: self.k, n0: self.n_i(0), n2: self.n_i(2), n4: self.n_i(4) };
        serde_json::to_string_pretty(&wire).expect("rank profile serializes")
    }
}

/// Full sweep over GF(2^m) x GF(2^n) minus the origin. Pairs are enumerated
/// with `alpha` in subfield order and `beta` in canonical element order.
pub fn rank_profile(ctx: &FieldContext, params: &Params, exec: Exec) -> Result<RankProfile> {
    let alphas = ctx.subfield_elements(params.m)?;
    let betas: Vec<FieldElement> = ctx.elements().collect();
    let size = betas.len();
    let total = alphas.len() * size;
    let records: Vec<Result<RankRecord>> = exec.map_collect(1..total, |p| {
        let (ai, bi) = (p / size, p % size);
        let zeros = phi_zero_count(ctx, params, alphas[ai], betas[bi]);
        let kernel_dim = kernel_dim_from_zeros(params, zeros)?;
        Ok(RankRecord { alpha_index: ai, beta_index: bi, kernel_dim, rank: params.s - kernel_dim })
    });
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;
    let mut counts = BTreeMap::new();
    for r in &records {
        *counts.entry(params.s - r.rank).or_insert(0u64) += 1;
    }
    Ok(RankProfile { n: params.n, k: params.k, records, counts })
}

/// Closed forms for `(n_0, n_2)` when `d' = d`; `None` when `d' = 2d`.
pub fn rank_counts_closed_form(params: &Params) -> Option<(Ratio, Ratio)> {
    if params.is_both_odd() {
        return None;
    }
    let (n, m, d) = (params.n as i64, params.m as i64, params.d as i64);
    let one = || p2(0);
    let n0 = (p2(n + 2 * d) - p2(n + d) - p2(n) + p2(m + 2 * d) - p2(m + d) + p2(2 * d)) * (p2(m) - one())
        / (p2(2 * d) - one());
    let n2 = (p2(m + d) - one()) * (p2(n) - one()) / (p2(2 * d) - one());
    Some((n0, n2))
}

/// Roots of `psi(z) = beta^(2^(n-k)) z^(2^(m-k)+1) + alpha z + beta` in GF(2^n),
/// for `alpha * beta != 0`. Exponents `2^(m-k)` with `k > m` are read modulo
/// the Frobenius order `n`.
pub fn psi_roots(
    ctx: &FieldContext,
    params: &Params,
    alpha: FieldElement,
    beta: FieldElement,
) -> Result<Vec<FieldElement>> {
    check_alpha(ctx, params, alpha)?;
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::DegeneratePsi);
    }
    let (m, k, n) = (params.m as i64, params.k as i64, params.n as i64);
    let lead = ctx.frobenius(beta, n - k);
    let mut out = Vec::new();
    for z in ctx.elements() {
        let zz = ctx.mul(ctx.frobenius(z, m - k), z);
        if ctx.mul(lead, zz) + ctx.mul(alpha, z) + beta == FieldElement::ZERO {
            out.push(z);
        }
    }
    Ok(out)
}

pub fn psi_root_count(ctx: &FieldContext, params: &Params, alpha: FieldElement, beta: FieldElement) -> Result<u32> {
    Ok(psi_roots(ctx, params, alpha, beta)?.len() as u32)
}

/// The scaling `y = (alpha/beta) z` turns `psi = 0` into
/// `y^(2^(m-k)+1) + b y + b = 0` with `b = alpha^(2^(m-k)+1) / beta^(2^(m-k)(2^m+1))`.
pub fn psi_scaled_parameter(
    ctx: &FieldContext,
    params: &Params,
    alpha: FieldElement,
    beta: FieldElement,
) -> Result<FieldElement> {
    check_alpha(ctx, params, alpha)?;
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::DegeneratePsi);
    }
    let (m, k) = (params.m as i64, params.k as i64);
    let num = ctx.mul(ctx.frobenius(alpha, m - k), alpha);
    let norm = ctx.pow(beta, (1u64 << params.m) + 1);
    let den = ctx.frobenius(norm, m - k);
    ctx.div(num, den)
}

/// Roots of `y^(2^h+1) + b y + b` lying in the subfield GF(2^l) of `ctx`.
pub fn g_roots_in_subfield(ctx: &FieldContext, l: u32, h: u32, b: FieldElement) -> Result<Vec<FieldElement>> {
    let sub = ctx.subfield_elements(l)?;
    Ok(sub
        .into_iter()
        .filter(|&y| ctx.mul(ctx.frobenius(y, h as i64), y) + ctx.mul(b, y) + b == FieldElement::ZERO)
        .collect())
}

/// Counts of `b` in GF(2^l)* by the number of roots of `z^(2^h+1) - b z + b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BluherCounts {
    pub l: u32,
    pub h: u32,
    pub e: u32,
    pub n0: u128,
    pub n1: u128,
    pub n2: u128,
    /// Count of `b` with exactly `2^e + 1` roots.
    pub n_top: u128,
    /// Any `b` with a root count outside {0, 1, 2, 2^e+1}; always zero in practice.
    pub other: u128,
}

impl BluherCounts {
    pub fn total(&self) -> u128 {
        self.n0 + self.n1 + self.n2 + self.n_top + self.other
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exhaustive counts over `b` in GF(2^l)*, where `ctx_l` realizes GF(2^l).
pub fn bluher_counts(ctx_l: &FieldContext, h: u32) -> BluherCounts {
    let l = ctx_l.n();
    let e = gcd(h, l);
    let top = (1u32 << e) + 1;
    // z^(2^h+1) for every z, by log arithmetic
    let powers: Vec<FieldElement> = ctx_l.elements().map(|z| ctx_l.pow(z, (1u64 << h) + 1)).collect();
    let zs: Vec<FieldElement> = ctx_l.elements().collect();
    let mut counts = BluherCounts { l, h, e, n0: 0, n1: 0, n2: 0, n_top: 0, other: 0 };
    for b in ctx_l.elements().skip(1) {
        let roots =
            zs.iter().zip(&powers).filter(|&(&z, &zp)| zp + ctx_l.mul(b, z) + b == FieldElement::ZERO).count() as u32;
        match roots {
            0 => counts.n0 += 1,
            1 => counts.n1 += 1,
            2 => counts.n2 += 1,
            r if r == top => counts.n_top += 1,
            _ => counts.other += 1,
        }
    }
    counts
}

/// The closed forms for the `N_i`, split on the parity of `l/e`.
pub fn bluher_closed_form(l: u32, h: u32) -> Result<BluherCounts> {
    let e = gcd(h, l);
    let (li, ei) = (l as i64, e as i64);
    let one = || p2(0);
    let two = || p2(1);
    let (n0, n1, n_top) = if (l / e).is_multiple_of(2) {
        (
            (p2(li + ei) - p2(ei)) / (two() * (p2(ei) + one())),
            p2(li - ei),
            (p2(li - ei) - p2(ei)) / (p2(2 * ei) - one()),
        )
    } else {
        (
            (p2(li + ei) + p2(ei)) / (two() * (p2(ei) + one())),
            p2(li - ei) - one(),
            (p2(li - ei) - one()) / (p2(2 * ei) - one()),
        )
    };
    let n2 = (p2(ei) - two()) * (p2(li) - one()) / (two() * (p2(ei) - one()));
    let table = format!("root counts l={l} h={h}");
    Ok(BluherCounts {
        l,
        h,
        e,
        n0: to_count(&n0, &table, "N0")?,
        n1: to_count(&n1, &table, "N1")?,
        n2: to_count(&n2, &table, "N2")?,
        n_top: to_count(&n_top, &table, "N_top")?,
        other: 0,
    })
}
