//! Exact rational evaluation of closed-form tables.
//!
//! Every multiplicity is evaluated as a [`Ratio`] and only converted to an
//! integer after an explicit integrality and sign check, so a mistyped
//! exponent shows up as a non-integral row instead of a silently truncated
//! count. Tables keep both the literal reading and the reading with any
//! registered correction applied; each correction that changes a row at the
//! given parameters is recorded as an [`Erratum`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::distribution::ValueDistribution;
use crate::error::{Error, Result};

pub type Ratio = BigRational;

/// `2^e` for any integer `e`.
pub fn p2(e: i64) -> Ratio {
    if e >= 0 {
        Ratio::from_integer(BigInt::one() << e as usize)
    } else {
        Ratio::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

pub fn int(v: i64) -> Ratio {
    Ratio::from_integer(BigInt::from(v))
}

pub fn one() -> Ratio {
    Ratio::one()
}

/// Integer value of `r` if it is a non-negative integer fitting in `u128`.
pub fn to_count(r: &Ratio, table: &str, row: &str) -> Result<u128> {
    if !r.is_integer() {
        return Err(Error::NonIntegral { table: table.into(), row: row.into(), value: r.to_string() });
    }
    if r.is_negative() {
        return Err(Error::NegativeMultiplicity { table: table.into(), row: row.into(), value: r.to_string() });
    }
    Ok(r.to_integer().to_u128().expect("multiplicity fits in u128"))
}

pub fn to_i128(r: &Ratio) -> Option<i128> {
    if r.is_integer() {
        r.to_integer().to_i128()
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub table: String,
    pub row: String,
    pub description: String,
}

impl fmt::Display for Erratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.table, self.row, self.description)
    }
}

#[derive(Clone, Debug)]
pub struct TableRow {
    /// The row's value column as printed, e.g. `-2^(m+2d)`.
    pub label: String,
    pub printed_value: i64,
    /// Value used for comparisons after registered corrections.
    pub value: i64,
    /// Weight column, where the table has one.
    pub printed_weight: Option<i64>,
    pub printed_multiplicity: Ratio,
    pub multiplicity: Ratio,
}

impl TableRow {
    pub fn new(label: impl Into<String>, value: i64, weight: Option<i64>, multiplicity: Ratio) -> Self {
        TableRow {
            label: label.into(),
            printed_value: value,
            value,
            printed_weight: weight,
            printed_multiplicity: multiplicity.clone(),
            multiplicity,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FormulaTable {
    pub name: String,
    pub rows: Vec<TableRow>,
    pub errata: Vec<Erratum>,
}

impl FormulaTable {
    pub fn new(name: impl Into<String>) -> Self {
        FormulaTable { name: name.into(), rows: Vec::new(), errata: Vec::new() }
    }

    pub fn push(&mut self, row: TableRow) {
        self.rows.push(row);
    }

    fn row_mut(&mut self, label: &str) -> &mut TableRow {
        self.rows.iter_mut().find(|r| r.label == label).expect("row exists")
    }

    /// Replaces the comparison value of the row at `index`; records an erratum
    /// when it differs from the printed value.
    pub fn correct_value(&mut self, index: usize, value: i64, description: &str) {
        let row = &mut self.rows[index];
        row.value = value;
        if row.printed_value != value {
            let label = row.label.clone();
            self.errata.push(Erratum { table: self.name.clone(), row: label, description: description.to_string() });
        }
    }

    /// Replaces the multiplicity of the row labelled `label`; records an
    /// erratum only if the corrected expression differs at these parameters.
    pub fn correct_multiplicity(&mut self, label: &str, corrected: Ratio, description: &str) {
        let name = self.name.clone();
        let row = self.row_mut(label);
        if row.printed_multiplicity != corrected {
            let detail = format!("{description} (printed {}, corrected {})", row.printed_multiplicity, corrected);
            row.multiplicity = corrected;
            self.errata.push(Erratum { table: name, row: label.to_string(), description: detail });
        }
    }

    /// Flags every row whose weight column disagrees with `weight_of(value)`.
    pub fn check_weights(&mut self, weight_of: impl Fn(i64) -> i64) {
        let mut found = Vec::new();
        for row in &self.rows {
            if let Some(w) = row.printed_weight {
                let expected = weight_of(row.value);
                if w != expected {
                    found.push(Erratum {
                        table: self.name.clone(),
                        row: row.label.clone(),
                        description: format!(
                            "weight column reads {w}, but value {} gives weight {expected}",
                            row.value
                        ),
                    });
                }
            }
        }
        self.errata.extend(found);
    }

    /// Distribution under the corrected reading.
    pub fn distribution(&self) -> Result<ValueDistribution> {
        let mut out = ValueDistribution::new();
        for row in &self.rows {
            out.add(row.value, to_count(&row.multiplicity, &self.name, &row.label)?);
        }
        Ok(out)
    }

    /// Distribution under the literal reading (printed values and multiplicities).
    pub fn printed_distribution(&self) -> Result<ValueDistribution> {
        let mut out = ValueDistribution::new();
        for row in &self.rows {
            out.add(row.printed_value, to_count(&row.printed_multiplicity, &self.name, &row.label)?);
        }
        Ok(out)
    }

    /// Sum of the corrected multiplicities, exact.
    pub fn mass(&self) -> Ratio {
        self.rows.iter().fold(Ratio::zero(), |acc, r| acc + r.multiplicity.clone())
    }

    pub fn printed_mass(&self) -> Ratio {
        self.rows.iter().fold(Ratio::zero(), |acc, r| acc + r.printed_multiplicity.clone())
    }

    /// Whether the literal reading differs from the corrected one.
    pub fn has_errata(&self) -> bool {
        !self.errata.is_empty()
    }
}
