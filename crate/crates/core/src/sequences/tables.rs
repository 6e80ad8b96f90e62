//! Closed-form correlation distributions of the family, two ways: the printed
//! case tables and a composition of the pairwise block counts from the `T` and
//! `S` distributions.
//!
//! Corrections applied to the printed tables (each recorded as an erratum only
//! where it changes the row at the given parameters):
//! - `d' = 2d`: values carry the `-1` offset of the other two cases and the
//!   in-phase row is `2^n - 1`, not `2^m`.
//! - `d' = 2d`, row `-2^(m+2d)`: the exponents `2n-2d-1` and `n-2d` in the second
//!   factor should be `2n-4d-1` and `n-4d`.
//! - `m/d` even, row `-2^m-1`: the numerator lacks `+2^(m+2d) - 2^(m+d) - 2^(m+1)`,
//!   which vanishes for `d = 1` and leaves a non-integral count otherwise.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use crate::distribution::ValueDistribution;
use crate::error::Result;
use crate::field::{Case, Params};
use crate::formula::{int, p2, to_count, FormulaTable, Ratio, TableRow};

pub fn family_size(params: &Params) -> u64 {
    let base = 1u64 << (3 * params.m);
    match params.case {
        Case::BothOdd => base,
        Case::EvenM => base + (1 << params.m) - 1,
        Case::EvenK => base + (1 << params.m),
    }
}

/// The printed correlation table for the active case, with corrections applied.
pub fn correlation_table(params: &Params) -> FormulaTable {
    let (n, m, d) = (params.n as i64, params.m as i64, params.d as i64);
    let q = p2;
    let one = || p2(0);
    let den = q(2 * d) - one();
    let mut t = FormulaTable::new(match params.case {
        Case::EvenM => "correlation distribution (m/d even)",
        Case::EvenK => "correlation distribution (k/d even)",
        Case::BothOdd => "correlation distribution (m/d, k/d odd)",
    });
    let (pm, pmd, pm2d) = (1i64 << m, 1i64 << (m + d), 1i64 << (m + 2 * d));
    match params.case {
        Case::EvenM => {
            t.push(TableRow::new(
                "2^m-1",
                pm - 1,
                None,
                (q(4 * n + 2 * d - 1) - q(4 * n + d - 1) - q(4 * n - 1) + q(7 * m + 2 * d - 1) - q(7 * m + d - 1)
                    + q(3 * n + 2 * d - 1)
                    - q(5 * m + 2 * d)
                    + q(5 * m + d)
                    + q(5 * m)
                    - q(2 * n + 2 * d + 1)
                    + q(2 * n + d + 1)
                    + q(2 * n)
                    - q(3 * m + 2 * d)
                    - q(3 * m)
                    + q(n + 2 * d)
                    - q(n + d + 1)
                    + q(m + 2 * d + 1)
                    - q(m + d)
                    - q(2 * d)
                    + q(d))
                    / den.clone(),
            ));
            let neg_num = q(4 * n + 2 * d - 1) - q(4 * n + d - 1) - q(4 * n - 1) - q(7 * m + 2 * d - 1)
                + q(7 * m + d - 1)
                + q(7 * m)
                + q(3 * n + 2 * d - 1)
                - q(3 * n)
                - q(5 * m + 2 * d + 1)
                + q(5 * m + d)
                + q(5 * m + 1)
                + q(2 * n + 2 * d)
                - q(2 * n + 1)
                - q(3 * m + d + 1)
                + q(n + 2 * d)
                + q(n + d)
                + q(n)
                - q(m)
                - q(2 * d)
                + q(d)
                + int(2);
            let fixed = (neg_num.clone() + q(m + 2 * d) - q(m + d) - q(m + 1)) / den.clone();
            t.push(TableRow::new("-2^m-1", -pm - 1, None, neg_num / den.clone()));
            t.push(TableRow::new(
                "2^(m+d)-1",
                pmd - 1,
                None,
                q(m - d) * (q(m - d) + one()) * (q(m + d) - one()) * (q(5 * m - 1) - q(n) - q(m) + one()) / den.clone(),
            ));
            t.push(TableRow::new(
                "-2^(m+d)-1",
                -pmd - 1,
                None,
                (q(4 * n - d - 1) - q(7 * m - 1) - q(7 * m - 2 * d - 1) + q(3 * n - d - 1) - q(5 * m - d) + q(2 * n)
                    - q(2 * n - d)
                    + q(2 * n - 2 * d)
                    + q(3 * m)
                    + q(3 * m - 2 * d)
                    + q(n + d)
                    - q(n + 1)
                    - q(n - d)
                    - q(n - 2 * d)
                    + int(3) * q(m - d)
                    - q(d + 1))
                    / den.clone(),
            ));
            t.push(TableRow::new(
                "-1",
                -1,
                None,
                q(4 * n - d) - q(7 * m - 2 * d) + q(5 * m) - q(5 * m - d + 1) - q(2 * n - d + 1)
                    + q(2 * n - 2 * d + 1)
                    + q(3 * m - d + 1)
                    + q(3 * m - 2 * d + 1)
                    - q(n + 1)
                    - q(n - 2 * d + 1)
                    - q(m + 1)
                    + q(m - d + 1)
                    + int(2),
            ));
            t.push(TableRow::new("2^n-1", (1 << n) - 1, None, q(3 * m) + q(m) - one()));
            t.correct_multiplicity("-2^m-1", fixed, "numerator lacks +2^(m+2d)-2^(m+d)-2^(m+1)");
        }
        Case::EvenK => {
            t.push(TableRow::new(
                "2^m-1",
                pm - 1,
                None,
                (q(4 * n + 2 * d - 1) - q(4 * n + d - 1) - q(4 * n - 1) + q(7 * m + 2 * d - 1) - q(7 * m + d - 1)
                    + q(3 * n + 2 * d - 1)
                    - q(2 * n + 2 * d)
                    + q(2 * n + d)
                    + q(2 * n)
                    - q(3 * m + 2 * d)
                    + q(3 * m + d)
                    - q(n + 2 * d))
                    / den.clone(),
            ));
            t.push(TableRow::new(
                "-2^m-1",
                -pm - 1,
                None,
                (q(4 * n + 2 * d - 1) - q(4 * n + d - 1) - q(4 * n - 1) - q(7 * m + 2 * d - 1)
                    + q(7 * m + d - 1)
                    + q(7 * m)
                    + q(3 * n + 2 * d - 1)
                    - q(3 * n)
                    - q(5 * m + 2 * d)
                    + q(5 * m)
                    + q(2 * n + d)
                    - q(3 * m + d)
                    - q(3 * m)
                    + q(n)
                    + q(m + 2 * d)
                    - q(m))
                    / den.clone(),
            ));
            let tail = q(n - d) * (q(m + d) - one()) * (q(2 * n - 1) - one()) / den.clone();
            t.push(TableRow::new("2^(m+d)-1", pmd - 1, None, (q(m - d) + one()) * tail.clone()));
            t.push(TableRow::new("-2^(m+d)-1", -pmd - 1, None, (q(m - d) - one()) * tail));
            t.push(TableRow::new(
                "-1",
                -1,
                None,
                q(4 * n - d) - q(7 * m - 2 * d) + q(5 * m) - q(2 * n - d + 1) + q(3 * m - 2 * d + 1) - q(m + 1),
            ));
            t.push(TableRow::new("2^n-1", (1 << n) - 1, None, q(3 * m) + q(m)));
        }
        Case::BothOdd => {
            let a = q(n) - q(n - 2 * d) - q(n - 3 * d) + q(m) - q(m - d) + one();
            let b = q(m) + q(m - d) + q(m - 2 * d) + one();
            let den3 = (q(d) + one()) * (q(2 * d) - one());
            let den2 = (q(d) + one()) * (q(d) + one());
            let qm2 = q(n) - int(2);
            t.push(TableRow::new("2^m", pm, None, q(2 * n + 3 * d - 1) * qm2.clone() * a.clone() / den3.clone()));
            t.push(TableRow::new(
                "-2^m",
                -pm,
                None,
                q(3 * m + 3 * d) * (q(3 * m - 1) - q(n) + one()) * a / den3.clone(),
            ));
            t.push(TableRow::new(
                "2^(m+d)",
                pmd,
                None,
                q(3 * m) * (q(2 * n - d - 1) + q(3 * m - 1) - q(n - d) - q(m) + q(d)) * b.clone() / den2.clone(),
            ));
            t.push(TableRow::new("-2^(m+d)", -pmd, None, q(2 * n - 1) * (q(m - d) - one()) * qm2.clone() * b / den2));
            t.push(TableRow::new(
                "2^(m+2d)",
                pm2d,
                None,
                q(2 * n - 2 * d - 1) * (q(m - 2 * d) + one()) * (q(m - d) - one()) * qm2.clone() / den3.clone(),
            ));
            let lead = q(3 * m) * (q(m - d) - one()) / den3;
            t.push(TableRow::new(
                "-2^(m+2d)",
                -pm2d,
                None,
                lead.clone() * (q(2 * n - 2 * d - 1) - q(3 * m - 2 * d - 1) - q(n - 2 * d) + q(m - 2 * d) + one()),
            ));
            t.push(TableRow::new(
                "0",
                0,
                None,
                q(3 * m)
                    * qm2
                    * (q(3 * m - d) - q(3 * m - 2 * d) + q(3 * m - 3 * d) - q(3 * m - 4 * d)
                        + q(3 * m - 5 * d)
                        + q(n - d)
                        - q(n - 2 * d + 1)
                        + q(n - 3 * d)
                        - q(n - 4 * d)
                        + one()),
            ));
            t.push(TableRow::new("2^m (in-phase row)", pm, None, q(3 * m)));
            let last = t.rows.len() - 1;
            for i in 0..last {
                let v = t.rows[i].printed_value - 1;
                t.correct_value(i, v, "value lacks the -1 offset of a correlation value");
            }
            t.correct_value(last, (1 << n) - 1, "in-phase value is 2^n-1");
            t.correct_multiplicity(
                "-2^(m+2d)",
                lead * (q(2 * n - 4 * d - 1) - q(3 * m - 2 * d - 1) - q(n - 4 * d) + q(m - 2 * d) + one()),
                "exponents 2n-2d-1 and n-2d should read 2n-4d-1 and n-4d",
            );
        }
    }
    t
}

/// `#{beta : T(0, beta) = kappa + 1}` in closed form.
pub fn t0_closed_form(params: &Params, kappa: i64) -> Ratio {
    let (n, m, d) = (params.n as i64, params.m as i64, params.d as i64);
    let qm1 = p2(n) - p2(0);
    if kappa == (1 << n) - 1 {
        return p2(0);
    }
    match params.case {
        Case::EvenK if kappa == -1 => qm1,
        Case::EvenM if kappa == (1 << m) - 1 => p2(d) * qm1 / (p2(d) + p2(0)),
        Case::EvenM if kappa == -(1 << (m + d)) - 1 => qm1 / (p2(d) + p2(0)),
        _ => Ratio::zero(),
    }
}

/// `l_kappa`: the `beta_1 = beta_2 = 0` contribution to the second sub-family block.
pub fn l_kappa(params: &Params, kappa: i64) -> Ratio {
    if kappa == (1i64 << params.n) - 1 {
        p2(0)
    } else if kappa == -(1i64 << params.m) - 1 {
        p2(params.m as i64) - int(2)
    } else {
        Ratio::zero()
    }
}

/// Block `(i, j)` counts `M_kappa(F_i, F_j)` and the counters they are built from.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct KappaTerms {
    pub s: Ratio,
    pub s1: Ratio,
    pub t: Ratio,
    pub t0: Ratio,
    pub t1: Ratio,
    pub l: Ratio,
    /// `blocks[i][j]` is `M_kappa(F_(i+1), F_(j+1))`.
    pub blocks: [[Ratio; 3]; 3],
}

impl KappaTerms {
    pub fn total(&self) -> Ratio {
        self.blocks.iter().flatten().fold(Ratio::zero(), |acc, b| acc + b.clone())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Composition {
    pub terms: BTreeMap<i64, KappaTerms>,
}

#[derive(Serialize)]
struct BlockWire {
    kappa: i64,
    block: String,
    count: String,
}

impl Composition {
    pub fn distribution(&self) -> Result<ValueDistribution> {
        let mut out = ValueDistribution::new();
        for (&kappa, terms) in &self.terms {
            out.add(kappa, to_count(&terms.total(), "correlation composition", &kappa.to_string())?);
        }
        Ok(out)
    }

    /// `M_kappa(F_(i+1), F_(j+1))` as a distribution over `kappa`.
    pub fn block(&self, i: usize, j: usize) -> Result<ValueDistribution> {
        let mut out = ValueDistribution::new();
        for (&kappa, terms) in &self.terms {
            let label = format!("{kappa} block F{}F{}", i + 1, j + 1);
            out.add(kappa, to_count(&terms.blocks[i][j], "correlation composition", &label)?);
        }
        Ok(out)
    }

    /// Counter selected by `f` as an integer distribution over `kappa + 1`.
    pub fn counter(&self, f: impl Fn(&KappaTerms) -> &Ratio, name: &str) -> Result<ValueDistribution> {
        let mut out = ValueDistribution::new();
        for (&kappa, terms) in &self.terms {
            out.add(kappa + 1, to_count(f(terms), name, &kappa.to_string())?);
        }
        Ok(out)
    }

    pub fn blocks_json(&self) -> String {
        let mut rows = Vec::new();
        for (&kappa, terms) in &self.terms {
            for i in 0..3 {
                for j in 0..3 {
                    if !terms.blocks[i][j].is_zero() {
                        rows.push(BlockWire {
                            kappa,
                            block: format!("F{}F{}", i + 1, j + 1),
                            count: terms.blocks[i][j].to_string(),
                        });
                    }
                }
            }
        }
        serde_json::to_string_pretty(&rows).expect("blocks serialize")
    }
}

/// Composes the correlation distribution from the `S` and `T` value
/// distributions (as counts of `S = kappa + 1`, `T = kappa + 1`).
pub fn compose(params: &Params, s_dist: &ValueDistribution, t_dist: &ValueDistribution) -> Composition {
    let (m, n) = (params.m as i64, params.n as i64);
    let q = p2(n);
    let one = p2(0);
    let two = int(2);
    let pm = p2(m);
    let kappas: BTreeSet<i64> = s_dist.values().chain(t_dist.values()).map(|v| v - 1).collect();
    let ratio = |c: u128| Ratio::from_integer(c.into());
    let mut out = Composition::default();
    for kappa in kappas {
        let s = ratio(s_dist.get(kappa + 1));
        let t = ratio(t_dist.get(kappa + 1));
        let t0 = t0_closed_form(params, kappa);
        let l = l_kappa(params, kappa);
        let s1 = (s.clone() - t.clone()) / (q.clone() - one.clone());
        let t1 = (t.clone() - t0.clone()) / (pm.clone() - one.clone());
        let frac = (q.clone() - two.clone()) / (q.clone() - one.clone());
        let mut blocks: [[Ratio; 3]; 3] = Default::default();
        blocks[0][0] = p2(3 * m) * ((q.clone() - two.clone()) * s.clone() + t.clone()) / (q.clone() - one.clone());
        if params.case != Case::BothOdd {
            let m12 = (pm.clone() - one.clone()) * (s.clone() - t.clone());
            blocks[0][1] = m12.clone();
            blocks[1][0] = m12;
            blocks[1][1] = (pm.clone() - two.clone()) * frac.clone() * t.clone()
                + frac.clone() * t0.clone()
                + l.clone() / (pm.clone() + one.clone());
        }
        if params.case == Case::EvenK {
            let m13 = s.clone() - t.clone();
            blocks[0][2] = m13.clone();
            blocks[2][0] = m13;
            let delta =
                if kappa == -(1i64 << m) - 1 { one.clone() / (pm.clone() + one.clone()) } else { Ratio::zero() };
            let m23 = frac.clone() * (t.clone() - t0.clone()) + delta;
            blocks[1][2] = m23.clone();
            blocks[2][1] = m23;
            blocks[2][2] = if kappa == -1 {
                q.clone() - two.clone()
            } else if kappa == (1i64 << n) - 1 {
                one.clone()
            } else {
                Ratio::zero()
            };
        }
        out.terms.insert(kappa, KappaTerms { s, s1, t, t0, t1, l, blocks });
    }
    out
}
