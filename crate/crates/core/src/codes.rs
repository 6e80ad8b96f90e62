//! The cyclic codes `C_1` (parity check `h_2 h_3`) and `C_2` (parity check
//! `h_1 h_2 h_3`), where `h_1, h_2, h_3` are the minimal polynomials of
//! `pi^-1`, `pi^-(2^k+1)` and `pi^-(2^m+1)`.
//!
//! Codewords come from the trace parameterization
//! `c_i = Tr_1^m(alpha pi^(i(2^m+1))) + Tr_1^n(beta pi^(i(2^k+1)) + gamma pi^i)`;
//! the parity-check polynomials are computed for validation only.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distribution::{DenseHistogram, ValueDistribution};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::expsum::SumKernel;
use crate::field::{clmul, x_pow_mod, FieldContext, FieldElement, Params};
use crate::packed::PackedBits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CodeId {
    C1,
    C2,
}

impl fmt::Display for CodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeId::C1 => "c1",
            CodeId::C2 => "c2",
        })
    }
}

impl FromStr for CodeId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Ok(CodeId::C1),
            "c2" => Ok(CodeId::C2),
            other => Err(format!("unknown code {other:?} (expected c1 or c2)")),
        }
    }
}

/// Minimal polynomial over GF(2) of `pi^-e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalPolynomial {
    pub exponent: u64,
    /// Cyclotomic coset of `-e` modulo `2^n - 1`, in generation order.
    pub coset: Vec<u64>,
    /// Coefficient of `x^i` at bit `i`.
    pub coefficients: u64,
    pub degree: u32,
}

impl MinimalPolynomial {
    /// Evaluates the polynomial at a field element.
    pub fn eval(&self, ctx: &FieldContext, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for i in (0..=self.degree).rev() {
            acc = ctx.mul(acc, x);
            if (self.coefficients >> i) & 1 == 1 {
                acc += FieldElement::ONE;
            }
        }
        acc
    }

    /// True iff the polynomial divides `x^(2^n - 1) - 1`.
    pub fn divides_x_order_minus_one(&self, ctx: &FieldContext) -> bool {
        self.degree == 0 || x_pow_mod(ctx.order() as u64, self.coefficients, self.degree) == 1
    }

    pub fn to_hex(&self) -> String {
        format!("{:#x}", self.coefficients)
    }
}

pub fn minimal_poly(ctx: &FieldContext, e: u64) -> Result<MinimalPolynomial> {
    let order = ctx.order() as u64;
    if e >= order {
        return Err(Error::Verification {
            check: "minimal polynomial exponent".into(),
            expected: format!("< {order}"),
            found: e.to_string(),
        });
    }
    let root = (order - e) % order;
    let mut coset = vec![root];
    let mut c = (root * 2) % order;
    while c != root {
        coset.push(c);
        c = (c * 2) % order;
    }
    // expand prod (x + pi^c) with coefficients in GF(2^n), lowest degree first
    let mut poly = vec![FieldElement::ONE];
    for &c in &coset {
        let r = ctx.exp(c);
        let mut next = vec![FieldElement::ZERO; poly.len() + 1];
        for (i, &a) in poly.iter().enumerate() {
            next[i + 1] += a;
            next[i] += ctx.mul(a, r);
        }
        poly = next;
    }
    let mut mask = 0u64;
    for (i, a) in poly.iter().enumerate() {
        match a.0 {
            0 => {}
            1 => mask |= 1 << i,
            other => {
                return Err(Error::Verification {
                    check: format!("minimal polynomial of pi^-{e} has binary coefficients"),
                    expected: "0 or 1".into(),
                    found: format!("{other:#x} at x^{i}"),
                })
            }
        }
    }
    Ok(MinimalPolynomial { exponent: e, degree: coset.len() as u32, coset, coefficients: mask })
}

/// `(h_1, h_2, h_3)`.
pub fn code_polynomials(ctx: &FieldContext, params: &Params) -> Result<[MinimalPolynomial; 3]> {
    Ok([minimal_poly(ctx, 1)?, minimal_poly(ctx, (1u64 << params.k) + 1)?, minimal_poly(ctx, (1u64 << params.m) + 1)?])
}

/// Parity-check polynomial as a GF(2) mask: `h_2 h_3` for `C_1`, `h_1 h_2 h_3` for `C_2`.
pub fn parity_check(ctx: &FieldContext, params: &Params, code: CodeId) -> Result<u64> {
    let [h1, h2, h3] = code_polynomials(ctx, params)?;
    let base = clmul(h2.coefficients, h3.coefficients);
    Ok(match code {
        CodeId::C1 => base,
        CodeId::C2 => clmul(base, h1.coefficients),
    })
}

/// log2 of the number of codewords, from the parity-check degree.
pub fn dimension(params: &Params, code: CodeId) -> u32 {
    match code {
        CodeId::C1 => 3 * params.m,
        CodeId::C2 => 5 * params.m,
    }
}

fn codeword_raw(kernel: &SumKernel, a: Option<u32>, lb: Option<u32>, lg: Option<u32>) -> PackedBits {
    let ctx = kernel.ctx();
    let order = ctx.order();
    PackedBits::from_fn(order as usize, |i| {
        let mut bit = kernel.f_bit(a, lb, i);
        if let Some(lg) = lg {
            bit ^= kernel.trace_at_log((lg + i as u32) % order);
        }
        bit == 1
    })
}

pub fn codeword_c1(kernel: &SumKernel, alpha: FieldElement, beta: FieldElement) -> Result<PackedBits> {
    Ok(codeword_raw(kernel, kernel.alpha_exponent(alpha)?, kernel.ctx().log(beta), None))
}

pub fn codeword_c2(
    kernel: &SumKernel,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> Result<PackedBits> {
    Ok(codeword_raw(kernel, kernel.alpha_exponent(alpha)?, kernel.ctx().log(beta), kernel.ctx().log(gamma)))
}

fn word_count(kernel: &SumKernel, code: CodeId) -> usize {
    let pairs = (1usize << kernel.params().m) * kernel.ctx().size();
    match code {
        CodeId::C1 => pairs,
        CodeId::C2 => pairs * kernel.ctx().size(),
    }
}

/// Codeword number `w`: index order is `(alpha, beta[, gamma])` with the last
/// coordinate fastest, each in canonical element order.
fn codeword_at(kernel: &SumKernel, code: CodeId, w: usize) -> PackedBits {
    let size = kernel.ctx().size();
    let (pair, g) = match code {
        CodeId::C1 => (w, 0),
        CodeId::C2 => (w / size, w % size),
    };
    let (ai, bi) = (pair / size, pair % size);
    let idx = |i: usize| (i > 0).then(|| i as u32 - 1);
    codeword_raw(kernel, idx(ai), idx(bi), idx(g))
}

/// Hamming weights of every codeword, counted directly on the packed words.
pub fn weight_distribution(kernel: &SumKernel, code: CodeId, exec: Exec) -> ValueDistribution {
    let len = kernel.ctx().order() as i64;
    exec.fold(
        0..word_count(kernel, code),
        || DenseHistogram::new(len),
        |mut h, w| {
            h.add(codeword_at(kernel, code, w).count_ones() as i64);
            h
        },
        DenseHistogram::merge,
    )
    .into_distribution()
}

/// `w = 2^(n-1) - v/2` applied to a sum distribution.
pub fn pushforward(params: &Params, spectrum: &ValueDistribution) -> ValueDistribution {
    let half = 1i64 << (params.n - 1);
    spectrum.map_values(|v| half - v / 2)
}

/// Number of distinct codewords produced by the parameterization.
pub fn distinct_codewords(kernel: &SumKernel, code: CodeId) -> usize {
    let mut seen = HashSet::with_capacity(word_count(kernel, code));
    for w in 0..word_count(kernel, code) {
        seen.insert(codeword_at(kernel, code, w));
    }
    seen.len()
}

/// True iff the set of generated codewords is closed under the cyclic shift.
pub fn check_cyclicity(kernel: &SumKernel, code: CodeId) -> bool {
    let words: Vec<PackedBits> = (0..word_count(kernel, code)).map(|w| codeword_at(kernel, code, w)).collect();
    let set: HashSet<&PackedBits> = words.iter().collect();
    words.iter().all(|c| set.contains(&c.rotated(1)))
}

/// One hex row per codeword, in parameter order.
pub fn dump_codewords(kernel: &SumKernel, code: CodeId) -> String {
    let mut out = String::new();
    for w in 0..word_count(kernel, code) {
        out.push_str(&codeword_at(kernel, code, w).to_hex());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expsum::{s_spectrum, t_spectrum};
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn setup(n: u32, k: u32) -> (FieldContext, Params) {
        (FieldContext::new(n, None).unwrap(), Params::new(n, k).unwrap())
    }

    #[test]
    fn minimal_polynomial_degrees() {
        for (n, k) in [(4, 1), (6, 1), (6, 2), (8, 1), (8, 3), (10, 3)] {
            let (ctx, p) = setup(n, k);
            let [h1, h2, h3] = code_polynomials(&ctx, &p).unwrap();
            assert_eq!((h1.degree, h2.degree, h3.degree), (n, n, n / 2), "{n},{k}");
            for h in [&h1, &h2, &h3] {
                assert!(h.divides_x_order_minus_one(&ctx));
                let root = ctx.inv(ctx.exp(h.exponent)).unwrap();
                assert_eq!(h.eval(&ctx, root), FieldElement::ZERO);
            }
            assert_eq!(parity_check(&ctx, &p, CodeId::C2).unwrap().ilog2(), 5 * p.m);
        }
        let ctx = FieldContext::new(4, None).unwrap();
        assert_eq!(minimal_poly(&ctx, 5).unwrap().coefficients, 0b111);
        assert!(minimal_poly(&ctx, 15).is_err());
    }

    #[test]
    fn weights_match_sums() {
        let mut rng = StdRng::seed_from_u64(3);
        let (ctx, p) = setup(6, 1);
        let kern = SumKernel::new(&ctx, &p);
        let alphas = ctx.subfield_elements(3).unwrap();
        assert_eq!(codeword_c1(&kern, FieldElement::ZERO, FieldElement::ZERO).unwrap().count_ones(), 0);
        for _ in 0..100 {
            let a = alphas[rng.gen_range(0..alphas.len())];
            let b = FieldElement(rng.gen_range(0..64));
            let g = FieldElement(rng.gen_range(0..64));
            let w1 = codeword_c1(&kern, a, b).unwrap().count_ones() as i64;
            assert_eq!(w1, 32 - kern.t(a, b).unwrap() / 2);
            let w2 = codeword_c2(&kern, a, b, g).unwrap().count_ones() as i64;
            assert_eq!(w2, 32 - kern.s(a, b, g).unwrap() / 2);
            // shifting by one position multiplies the parameters
            let shifted = codeword_c1(&kern, ctx.mul(a, ctx.exp(9)), ctx.mul(b, ctx.exp(3))).unwrap();
            assert_eq!(codeword_c1(&kern, a, b).unwrap().rotated(1), shifted);
        }
    }

    #[test]
    fn weight_distributions_small() {
        let (ctx, p) = setup(4, 1);
        let kern = SumKernel::new(&ctx, &p);
        let c1 = weight_distribution(&kern, CodeId::C1, Exec::Parallel);
        assert_eq!(c1.to_string(), "{12:5, 10:3, 8:30, 6:25, 0:1}");
        assert_eq!(c1, pushforward(&p, &t_spectrum(&kern, Exec::Sequential)));
        let c2 = weight_distribution(&kern, CodeId::C2, Exec::Parallel);
        assert_eq!(c2.to_string(), "{12:35, 10:168, 8:435, 6:280, 4:105, 0:1}");
        assert_eq!(c2, pushforward(&p, &s_spectrum(&kern, Exec::Sequential)));
        assert_eq!(distinct_codewords(&kern, CodeId::C1), 64);
        assert_eq!(distinct_codewords(&kern, CodeId::C2), 1024);
        assert!(check_cyclicity(&kern, CodeId::C1));
        assert!(check_cyclicity(&kern, CodeId::C2));

        let (ctx, p) = setup(6, 1);
        let kern = SumKernel::new(&ctx, &p);
        assert_eq!(weight_distribution(&kern, CodeId::C1, Exec::Parallel).to_string(), "{48:21, 36:280, 24:210, 0:1}");
    }

    #[test]
    fn dump_has_one_row_per_word() {
        let (ctx, p) = setup(4, 1);
        let kern = SumKernel::new(&ctx, &p);
        let dump = dump_codewords(&kern, CodeId::C1);
        assert_eq!(dump.lines().count(), 64);
        assert_eq!(dump.lines().next().unwrap(), "0000");
    }
}
