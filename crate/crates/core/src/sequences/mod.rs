//! The sequence family `F = F1 (+ F2 (+ F3))` of period `2^n - 1` and its
//! exhaustive correlation distribution.
//!
//! Sequences are stored bit-packed. A correlation value is
//! `N - 2 * popcount(a_i ^ rot(a_j, tau))`, so the sweep only ever counts
//! Hamming distances into a dense histogram and converts at the end.

pub mod tables;

use std::collections::HashMap;
use std::fmt;

use crate::distribution::ValueDistribution;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::expsum::SumKernel;
use crate::field::{Case, FieldElement, Params};
use crate::packed::PackedBits;

/// Sub-family tag with parameter indices in canonical element order
/// (index 0 is zero, index `j + 1` is the `j`-th power of the generator).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceLabel {
    F1 {
        alpha_index: u32,
        beta_index: u32,
    },
    /// `beta = pi^i`.
    F2 {
        i: u32,
    },
    F3,
}

impl SequenceLabel {
    pub fn block(self) -> usize {
        match self {
            SequenceLabel::F1 { .. } => 0,
            SequenceLabel::F2 { .. } => 1,
            SequenceLabel::F3 => 2,
        }
    }
}

impl fmt::Display for SequenceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceLabel::F1 { alpha_index, beta_index } => write!(f, "F1({alpha_index};{beta_index})"),
            SequenceLabel::F2 { i } => write!(f, "F2({i})"),
            SequenceLabel::F3 => write!(f, "F3"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinarySequence {
    pub bits: PackedBits,
    pub label: SequenceLabel,
}

impl BinarySequence {
    pub fn period(&self) -> usize {
        self.bits.len()
    }

    /// Smallest `p` dividing the length with `rot(bits, p) == bits`.
    pub fn minimal_period(&self) -> usize {
        let len = self.bits.len();
        (1..len).filter(|p| len.is_multiple_of(*p)).find(|&p| self.bits.rotated(p) == self.bits).unwrap_or(len)
    }

    /// Lexicographically least rotation, the representative of the cyclic class.
    pub fn canonical(&self) -> PackedBits {
        canonical_rotation(&self.bits)
    }
}

fn canonical_rotation(bits: &PackedBits) -> PackedBits {
    let mut best = bits.clone();
    let mut buf = PackedBits::zeros(bits.len());
    for tau in 1..bits.len() {
        bits.rotate_into(tau, buf.words_mut());
        if buf < best {
            best.clone_from(&buf);
        }
    }
    best
}

#[derive(Clone, Debug)]
pub struct SequenceFamily {
    pub members: Vec<BinarySequence>,
    pub params: Params,
}

impl SequenceFamily {
    pub fn expected_size(&self) -> u64 {
        tables::family_size(&self.params)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `[F1, F2, F3]` sub-family sizes; members are stored in this order.
    pub fn block_sizes(&self) -> [usize; 3] {
        let mut sizes = [0; 3];
        for s in &self.members {
            sizes[s.label.block()] += 1;
        }
        sizes
    }

    /// One `label,hex` line per member.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for s in &self.members {
            out.push_str(&format!("{},{}\n", s.label, s.bits.to_hex()));
        }
        out
    }
}

fn sequence(kernel: &SumKernel, a: Option<u32>, lb: Option<u32>, linear: bool) -> PackedBits {
    let order = kernel.ctx().order() as usize;
    PackedBits::from_fn(order, |i| {
        let mut bit = kernel.f_bit(a, lb, i);
        if linear {
            bit ^= kernel.trace_at_log(i as u32);
        }
        bit == 1
    })
}

pub fn build_family(kernel: &SumKernel) -> SequenceFamily {
    let params = *kernel.params();
    let size = kernel.ctx().size() as u32;
    let idx = |i: u32| (i > 0).then(|| i - 1);
    let mut members = Vec::with_capacity(tables::family_size(&params) as usize);
    for alpha_index in 0..1u32 << params.m {
        for beta_index in 0..size {
            members.push(BinarySequence {
                bits: sequence(kernel, idx(alpha_index), idx(beta_index), true),
                label: SequenceLabel::F1 { alpha_index, beta_index },
            });
        }
    }
    if params.case != Case::BothOdd {
        for i in 0..(1u32 << params.m) - 1 {
            members.push(BinarySequence {
                bits: sequence(kernel, Some(0), Some(i), false),
                label: SequenceLabel::F2 { i },
            });
        }
    }
    if params.case == Case::EvenK {
        members.push(BinarySequence { bits: sequence(kernel, None, Some(0), false), label: SequenceLabel::F3 });
    }
    SequenceFamily { members, params }
}

/// `M(tau) = sum_l (-1)^(a(l) + b(l + tau))`.
pub fn correlation(a: &BinarySequence, b: &BinarySequence, tau: usize) -> Result<i64> {
    let n = a.period();
    if b.period() != n {
        return Err(Error::PeriodMismatch(n, b.period()));
    }
    if tau >= n {
        return Err(Error::ShiftOutOfRange { tau, period: n });
    }
    let dist: u32 = a.bits.words().iter().zip(b.bits.rotated(tau).words()).map(|(x, y)| (x ^ y).count_ones()).sum();
    Ok(n as i64 - 2 * dist as i64)
}

/// Coefficients `(alpha, beta, gamma)` of the quadratic-plus-linear function a
/// member is the trace sequence of.
pub fn coefficients(kernel: &SumKernel, label: SequenceLabel) -> (FieldElement, FieldElement, FieldElement) {
    let ctx = kernel.ctx();
    let step = (1u64 << kernel.params().m) + 1;
    let at = |i: u32, scale: u64| if i == 0 { FieldElement::ZERO } else { ctx.exp((i as u64 - 1) * scale) };
    match label {
        SequenceLabel::F1 { alpha_index, beta_index } => (at(alpha_index, step), at(beta_index, 1), ctx.exp(0)),
        SequenceLabel::F2 { i } => (ctx.exp(0), ctx.exp(i as u64), FieldElement::ZERO),
        SequenceLabel::F3 => (FieldElement::ZERO, ctx.exp(0), FieldElement::ZERO),
    }
}

/// The correlation of two members at shift `tau` through the substitution
/// `alpha' = alpha_a + alpha_b pi^(tau(2^m+1))`, `beta' = beta_a + beta_b pi^(tau(2^k+1))`,
/// `gamma' = gamma_a + gamma_b pi^tau`: it equals `S(alpha', beta', gamma') - 1`.
pub fn reduced_correlation(kernel: &SumKernel, a: SequenceLabel, b: SequenceLabel, tau: usize) -> Result<i64> {
    let ctx = kernel.ctx();
    let p = kernel.params();
    let (aa, ba, ga) = coefficients(kernel, a);
    let (ab, bb, gb) = coefficients(kernel, b);
    let t = tau as u64;
    let alpha = ctx.add(aa, ctx.mul(ab, ctx.exp(t * ((1 << p.m) + 1))));
    let beta = ctx.add(ba, ctx.mul(bb, ctx.exp(t * ((1 << p.k) + 1))));
    let gamma = ctx.add(ga, ctx.mul(gb, ctx.exp(t)));
    Ok(kernel.s(alpha, beta, gamma)? - 1)
}

/// Correlation histogram split by sub-family block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorrelationHistogram {
    /// `blocks[i][j]` covers ordered pairs with the first member in `F_(i+1)`
    /// and the second in `F_(j+1)`.
    pub blocks: [[ValueDistribution; 3]; 3],
}

impl CorrelationHistogram {
    pub fn total(&self) -> ValueDistribution {
        self.blocks.iter().flatten().cloned().fold(ValueDistribution::new(), ValueDistribution::merge)
    }
}

#[inline(always)]
fn tally_fixed<const W: usize>(rows: &[u64], r: &[u64], hist: &mut [u64], weight: u64) {
    let r: &[u64; W] = r.try_into().expect("row width");
    for row in rows.chunks_exact(W) {
        let mut d = 0u32;
        for k in 0..W {
            d += (row[k] ^ r[k]).count_ones();
        }
        hist[d as usize] += weight;
    }
}

#[inline(always)]
fn tally_generic(rows: &[u64], r: &[u64], hist: &mut [u64], weight: u64) {
    match r.len() {
        1 => tally_fixed::<1>(rows, r, hist, weight),
        2 => tally_fixed::<2>(rows, r, hist, weight),
        4 => tally_fixed::<4>(rows, r, hist, weight),
        8 => tally_fixed::<8>(rows, r, hist, weight),
        16 => tally_fixed::<16>(rows, r, hist, weight),
        w => {
            for row in rows.chunks_exact(w) {
                let d: u32 = row.iter().zip(r).map(|(x, y)| (x ^ y).count_ones()).sum();
                hist[d as usize] += weight;
            }
        }
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "popcnt")]
unsafe fn tally_popcnt(rows: &[u64], r: &[u64], hist: &mut [u64], weight: u64) {
    tally_generic(rows, r, hist, weight)
}

/// Adds `weight` at the distance between `r` and each `W`-word row of `rows`.
fn tally(popcnt: bool, rows: &[u64], r: &[u64], hist: &mut [u64], weight: u64) {
    #[cfg(target_arch = "x86_64")]
    if popcnt {
        // SAFETY: `popcnt` is only set after runtime detection of the feature.
        return unsafe { tally_popcnt(rows, r, hist, weight) };
    }
    let _ = popcnt;
    tally_generic(rows, r, hist, weight)
}

fn has_popcnt() -> bool {
    #[cfg(target_arch = "x86_64")]
    {
        std::arch::is_x86_feature_detected!("popcnt")
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        false
    }
}

/// Histogram of `M_(i,j)(tau)` over all ordered member pairs and all shifts.
///
/// Only pairs `i <= j` are computed: `M_(i,j)(tau) = M_(j,i)(N - tau)`, so the
/// multiset over `tau` is the same for both orders.
pub fn correlation_distribution(family: &SequenceFamily, exec: Exec) -> CorrelationHistogram {
    let count = family.len();
    if count == 0 {
        return CorrelationHistogram::default();
    }
    let len = family.members[0].period();
    let width = family.members[0].bits.words().len();
    let rows: Vec<u64> = family.members.iter().flat_map(|s| s.bits.words().iter().copied()).collect();
    let sizes = family.block_sizes();
    let starts = [0, sizes[0], sizes[0] + sizes[1], count];
    let block_of = |j: usize| (0..3).find(|&b| j < starts[b + 1]).expect("index in family");
    let bins = len + 1;
    let popcnt = has_popcnt();
    let hist = exec.fold(
        0..count,
        || vec![0u64; 9 * bins],
        |mut hist, j| {
            let bj = block_of(j);
            let mut r = vec![0u64; width];
            for tau in 0..len {
                family.members[j].bits.rotate_into(tau, &mut r);
                for bi in 0..3 {
                    let (lo, hi) = (starts[bi], starts[bi + 1].min(j));
                    if lo >= hi {
                        continue;
                    }
                    let span = &rows[lo * width..hi * width];
                    if bi == bj {
                        tally(popcnt, span, &r, &mut hist[(4 * bj) * bins..][..bins], 2);
                    } else {
                        tally(popcnt, span, &r, &mut hist[(3 * bi + bj) * bins..][..bins], 1);
                        tally(popcnt, span, &r, &mut hist[(3 * bj + bi) * bins..][..bins], 1);
                    }
                }
                let own = &rows[j * width..(j + 1) * width];
                tally(popcnt, own, &r, &mut hist[(4 * bj) * bins..][..bins], 1);
            }
            hist
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    let mut out = CorrelationHistogram::default();
    for b in 0..9 {
        let block = &hist[b * bins..(b + 1) * bins];
        out.blocks[b / 3][b % 3] =
            block.iter().enumerate().map(|(d, &c)| (len as i64 - 2 * d as i64, c as u128)).collect();
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InequivalenceReport {
    /// Members whose minimal period is shorter than `2^n - 1`.
    pub short_period: Vec<usize>,
    /// Pairs `(i, j)`, `i < j`, of cyclically equivalent members.
    pub equivalent: Vec<(usize, usize)>,
}

impl InequivalenceReport {
    pub fn holds(&self) -> bool {
        self.short_period.is_empty() && self.equivalent.is_empty()
    }
}

/// Compares the canonical rotations of all members.
pub fn inequivalence_report(family: &SequenceFamily, exec: Exec) -> InequivalenceReport {
    let canon = exec.map_collect(0..family.len(), |i| {
        let s = &family.members[i];
        (s.canonical(), s.minimal_period() == s.period())
    });
    let mut report = InequivalenceReport::default();
    let mut first: HashMap<&PackedBits, usize> = HashMap::new();
    for (i, (c, full)) in canon.iter().enumerate() {
        if !full {
            report.short_period.push(i);
        }
        if let Some(&j) = first.get(c) {
            report.equivalent.push((j, i));
        } else {
            first.insert(c, i);
        }
    }
    report
}

pub fn check_inequivalence(family: &SequenceFamily, exec: Exec) -> bool {
    inequivalence_report(family, exec).holds()
}

/// For `beta` over all of `GF(2^n)*`, how often the sequence
/// `Tr_1^m(y^(2^m+1)) + Tr_1^n(beta y^(2^k+1))` is a cyclic shift of each `F2`
/// member, plus the number of `beta` matching no member.
pub fn f2_coverage(kernel: &SumKernel, family: &SequenceFamily, exec: Exec) -> (Vec<u64>, u64) {
    let f2: Vec<(usize, PackedBits)> = family
        .members
        .iter()
        .filter(|s| s.label.block() == 1)
        .enumerate()
        .map(|(pos, s)| (pos, s.canonical()))
        .collect();
    let index: HashMap<&PackedBits, usize> = f2.iter().map(|(pos, c)| (c, *pos)).collect();
    let order = kernel.ctx().order() as usize;
    let canon = exec.map_collect(0..order, |lb| canonical_rotation(&sequence(kernel, Some(0), Some(lb as u32), false)));
    let mut hits = vec![0u64; f2.len()];
    let mut unmatched = 0;
    for c in &canon {
        match index.get(c) {
            Some(&pos) => hits[pos] += 1,
            None => unmatched += 1,
        }
    }
    (hits, unmatched)
}
