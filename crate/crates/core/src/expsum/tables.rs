//! Closed-form value distributions of `T` and `S` (with the weight columns of
//! the corresponding codes), evaluated exactly.
//!
//! The printed tables for `d' = 2d` end with a row of value `2^m` and weight
//! `0`. Weight 0 forces value `2^n` through `w = 2^(n-1) - T/2`, so that row is
//! compared as `2^n` and recorded as an erratum. The weight column of the
//! `-2^(m+2d)` row of the `T` table has the wrong sign for its value; the
//! weight check reports it.

use crate::field::Params;
use crate::formula::{p2, FormulaTable, Ratio, TableRow};

fn exps(params: &Params) -> (i64, i64, i64) {
    (params.n as i64, params.m as i64, params.d as i64)
}

fn weight_of(n: u32) -> impl Fn(i64) -> i64 {
    move |value| (1i64 << (n - 1)) - value / 2
}

fn last_row_fix(table: &mut FormulaTable, params: &Params) {
    let last = table.rows.len() - 1;
    table.correct_value(last, 1i64 << params.n, "value of the zero-weight row read as 2^n (weight 0 forces T = 2^n)");
}

/// Value distribution of `T(alpha, beta)` and the weights of `C_1`.
pub fn t_table(params: &Params) -> FormulaTable {
    let (n, m, d) = exps(params);
    let one = || p2(0);
    let w = |e: i64, sign: i64| Some((1i64 << (n - 1)) + sign * (1i64 << (e - 1)));
    let mut t =
        FormulaTable::new(if params.is_both_odd() { "T distribution (d'=2d)" } else { "T distribution (d'=d)" });
    if !params.is_both_odd() {
        t.push(TableRow::new(
            "2^m",
            1 << m,
            w(m, -1),
            p2(d - 1) * (p2(m) - one()) * (p2(n) + p2(m + 1) + one()) / (p2(d) + one()),
        ));
        t.push(TableRow::new(
            "-2^m",
            -(1 << m),
            w(m, 1),
            p2(d - 1) * (p2(m) - one()) * (p2(n) - p2(n - d + 1) + one()) / (p2(d) - one()),
        ));
        t.push(TableRow::new(
            "-2^(m+d)",
            -(1 << (m + d)),
            w(m + d, 1),
            (p2(m - d) - one()) * (p2(n) - one()) / (p2(2 * d) - one()),
        ));
        t.push(TableRow::new("0", 0, Some(1 << (n - 1)), p2(m - d) * (p2(n) - one())));
        t.push(TableRow::new("2^n", 1 << n, Some(0), one()));
    } else {
        let a = p2(n) - p2(n - 2 * d) - p2(n - 3 * d) + p2(m) - p2(m - d) + one();
        let b = p2(m) + p2(m - d) + p2(m - 2 * d) + one();
        let den = (p2(d) + one()) * (p2(2 * d) - one());
        t.push(TableRow::new("-2^m", -(1 << m), w(m, 1), p2(3 * d) * (p2(m) - one()) * a / den.clone()));
        t.push(TableRow::new(
            "2^(m+d)",
            1 << (m + d),
            w(m + d, -1),
            p2(d) * (p2(n) - one()) * b / ((p2(d) + one()) * (p2(d) + one())),
        ));
        // printed weight 2^(n-1) - 2^(m+2d-1)
        t.push(TableRow::new(
            "-2^(m+2d)",
            -(1 << (m + 2 * d)),
            w(m + 2 * d, -1),
            (p2(m - d) - one()) * (p2(n) - one()) / den,
        ));
        t.push(TableRow::new("2^m (zero-weight row)", 1 << m, Some(0), one()));
        last_row_fix(&mut t, params);
    }
    t.check_weights(weight_of(params.n));
    t
}

/// Value distribution of `S(alpha, beta, gamma)` and the weights of `C_2`.
pub fn s_table(params: &Params) -> FormulaTable {
    let (n, m, d) = exps(params);
    let one = || p2(0);
    let w = |e: i64, sign: i64| Some((1i64 << (n - 1)) + sign * (1i64 << (e - 1)));
    let mut t =
        FormulaTable::new(if params.is_both_odd() { "S distribution (d'=2d)" } else { "S distribution (d'=d)" });
    let qm1 = p2(n) - one();
    if !params.is_both_odd() {
        let a = p2(n + 2 * d) - p2(n + d) - p2(n) + p2(m + 2 * d) - p2(m + d) + p2(2 * d);
        let den = p2(2 * d) - one();
        t.push(TableRow::new("2^m", 1 << m, w(m, -1), p2(m - 1) * qm1.clone() * a.clone() / den.clone()));
        let sq = (p2(m) - one()) * (p2(m) - one());
        t.push(TableRow::new("-2^m", -(1 << m), w(m, 1), p2(m - 1) * sq * a / den.clone()));
        let c = (p2(m + d) - one()) * qm1.clone() / den.clone();
        t.push(TableRow::new("2^(m+d)", 1 << (m + d), w(m + d, -1), p2(m - d - 1) * (p2(m - d) + one()) * c.clone()));
        t.push(TableRow::new("-2^(m+d)", -(1 << (m + d)), w(m + d, 1), p2(m - d - 1) * (p2(m - d) - one()) * c));
        t.push(TableRow::new("0", 0, Some(1 << (n - 1)), (p2(3 * m - d) - p2(n - 2 * d) + one()) * qm1));
        t.push(TableRow::new("2^n", 1 << n, Some(0), one()));
    } else {
        let a = p2(n) - p2(n - 2 * d) - p2(n - 3 * d) + p2(m) - p2(m - d) + one();
        let b = p2(m) + p2(m - d) + p2(m - 2 * d) + one();
        let den = (p2(d) + one()) * (p2(2 * d) - one());
        let den2 = (p2(d) + one()) * (p2(d) + one());
        let sq = (p2(m) - one()) * (p2(m) - one());
        let head = p2(m + 3 * d - 1) * a / den.clone();
        t.push(TableRow::new("2^m", 1 << m, w(m, -1), head.clone() * qm1.clone()));
        t.push(TableRow::new("-2^m", -(1 << m), w(m, 1), head * sq));
        let mid = p2(m - 1) * qm1.clone() * b / den2;
        t.push(TableRow::new("2^(m+d)", 1 << (m + d), w(m + d, -1), mid.clone() * (p2(m - d) + one())));
        t.push(TableRow::new("-2^(m+d)", -(1 << (m + d)), w(m + d, 1), mid * (p2(m - d) - one())));
        let low = p2(m - 2 * d - 1) * (p2(m - d) - one()) * qm1.clone() / den;
        t.push(TableRow::new("2^(m+2d)", 1 << (m + 2 * d), w(m + 2 * d, -1), low.clone() * (p2(m - 2 * d) + one())));
        t.push(TableRow::new("-2^(m+2d)", -(1 << (m + 2 * d)), w(m + 2 * d, 1), low * (p2(m - 2 * d) - one())));
        let zero: Ratio = qm1
            * (p2(3 * m - d) - p2(3 * m - 2 * d) + p2(3 * m - 3 * d) - p2(3 * m - 4 * d)
                + p2(3 * m - 5 * d)
                + p2(n - d)
                - p2(n - 2 * d + 1)
                + p2(n - 3 * d)
                - p2(n - 4 * d)
                + one());
        t.push(TableRow::new("0", 0, Some(1 << (n - 1)), zero));
        t.push(TableRow::new("2^m (zero-weight row)", 1 << m, Some(0), one()));
        last_row_fix(&mut t, params);
    }
    t.check_weights(weight_of(params.n));
    t
}

/// Rows of `table` re-expressed as a weight distribution (corrected reading).
pub fn weight_table(
    table: &FormulaTable,
    params: &Params,
) -> crate::error::Result<crate::distribution::ValueDistribution> {
    Ok(table.distribution()?.map_values(weight_of(params.n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::int;

    #[test]
    fn t_table_small_cases() {
        let p = Params::new(4, 1).unwrap();
        let t = t_table(&p);
        assert!(!t.has_errata());
        assert_eq!(t.printed_distribution().unwrap().to_string(), "{16:1, 4:25, 0:30, -4:3, -8:5}");

        let p = Params::new(6, 1).unwrap();
        let t = t_table(&p);
        assert_eq!(t.distribution().unwrap().to_string(), "{64:1, 16:210, -8:280, -32:21}");
        // zero-weight value and the -2^(m+2d) weight are both flagged
        assert_eq!(t.errata.len(), 2);
        assert_eq!(t.printed_distribution().unwrap().get(8), 1);
    }

    #[test]
    fn s_table_small_cases() {
        let p = Params::new(4, 1).unwrap();
        let s = s_table(&p);
        assert!(!s.has_errata());
        assert_eq!(s.distribution().unwrap().to_string(), "{16:1, 8:105, 4:280, 0:435, -4:168, -8:35}");
        let p = Params::new(6, 1).unwrap();
        let s = s_table(&p);
        assert_eq!(s.errata.len(), 1);
        assert_eq!(s.mass(), int(32768));
        assert_eq!(
            s.distribution().unwrap().to_string(),
            "{64:1, 32:63, 16:2100, 8:10080, 0:11403, -8:7840, -16:1260, -32:21}"
        );
    }

    #[test]
    fn mass_and_integrality_for_many_parameters() {
        for n in (4..=24).step_by(2) {
            for k in 1..n {
                let Ok(p) = Params::new(n, k) else { continue };
                let t = t_table(&p);
                assert_eq!(t.mass(), p2(3 * p.m as i64), "{n},{k}");
                t.distribution().unwrap();
                let s = s_table(&p);
                assert_eq!(s.mass(), p2(3 * p.m as i64 + n as i64));
                s.distribution().unwrap();
            }
        }
        let p = Params::new(8, 2).unwrap();
        assert_eq!(t_table(&p).distribution().unwrap().to_string(), "{256:1, 16:1734, 0:1020, -16:1290, -64:51}");
        let p = Params::new(8, 1).unwrap();
        assert_eq!(t_table(&p).distribution().unwrap().to_string(), "{256:1, 16:1445, 0:2040, -16:15, -32:595}");
    }

    #[test]
    fn weight_columns() {
        let p = Params::new(4, 1).unwrap();
        assert_eq!(weight_table(&t_table(&p), &p).unwrap().to_string(), "{12:5, 10:3, 8:30, 6:25, 0:1}");
    }
}
