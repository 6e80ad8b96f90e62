//! Value distributions (multisets of signed integers) shared by exponential-sum
//! spectra, weight distributions and correlation histograms, plus their JSON
//! and CSV encodings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValueDistribution {
    counts: BTreeMap<i64, u128>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    v: i64,
    count: u128,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    values: Vec<Entry>,
    total: u128,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON distribution: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV line {line}: {text:?}")]
    Csv { line: usize, text: String },
    #[error("total {declared} does not match the sum of counts {actual}")]
    Total { declared: u128, actual: u128 },
}

impl ValueDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` occurrences of `value`; zero counts leave no entry.
    pub fn add(&mut self, value: i64, count: u128) {
        if count > 0 {
            *self.counts.entry(value).or_insert(0) += count;
        }
    }

    pub fn merge(mut self, other: ValueDistribution) -> ValueDistribution {
        let (mut big, small) =
            if self.counts.len() >= other.counts.len() { (std::mem::take(&mut self), other) } else { (other, self) };
        for (v, c) in small.counts {
            big.add(v, c);
        }
        big
    }

    pub fn get(&self, value: i64) -> u128 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `(value, multiplicity)` pairs in ascending value order.
    pub fn entries(&self) -> impl Iterator<Item = (i64, u128)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.counts.keys().copied()
    }

    /// Pushforward along `f`.
    pub fn map_values(&self, f: impl Fn(i64) -> i64) -> ValueDistribution {
        let mut out = ValueDistribution::new();
        for (v, c) in self.entries() {
            out.add(f(v), c);
        }
        out
    }

    /// `sum value^p * multiplicity`, exact.
    pub fn moment(&self, p: u32) -> i128 {
        self.entries().map(|(v, c)| (v as i128).pow(p) * c as i128).sum()
    }

    pub fn to_json(&self) -> String {
        let wire = Wire { values: self.entries().map(|(v, count)| Entry { v, count }).collect(), total: self.total() };
        serde_json::to_string_pretty(&wire).expect("distribution serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let wire: Wire = serde_json::from_str(text)?;
        let mut out = ValueDistribution::new();
        for e in wire.values {
            out.add(e.v, e.count);
        }
        if out.total() != wire.total {
            return Err(FormatError::Total { declared: wire.total, actual: out.total() });
        }
        Ok(out)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("value,count\n");
        for (v, c) in self.entries() {
            s.push_str(&format!("{v},{c}\n"));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self, FormatError> {
        let mut out = ValueDistribution::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line == "value,count") {
                continue;
            }
            let bad = || FormatError::Csv { line: i + 1, text: line.to_string() };
            let (v, c) = line.split_once(',').ok_or_else(bad)?;
            let v: i64 = v.trim().parse().map_err(|_| bad())?;
            let c: u128 = c.trim().parse().map_err(|_| bad())?;
            out.add(v, c);
        }
        Ok(out)
    }

    /// Short content hash of the canonical JSON encoding.
    pub fn digest(&self) -> String {
        let h = Sha256::digest(self.to_json().as_bytes());
        hex::encode(&h[..8])
    }
}

impl FromIterator<(i64, u128)> for ValueDistribution {
    fn from_iter<I: IntoIterator<Item = (i64, u128)>>(iter: I) -> Self {
        let mut out = ValueDistribution::new();
        for (v, c) in iter {
            out.add(v, c);
        }
        out
    }
}

impl fmt::Display for ValueDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, c)) in self.counts.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}:{c}")?;
        }
        write!(f, "}}")
    }
}

/// Dense histogram over a symmetric integer window, used in hot loops.
#[derive(Clone, Debug)]
pub(crate) struct DenseHistogram {
    offset: i64,
    counts: Vec<u64>,
}

impl DenseHistogram {
    /// Accepts values in `[-radius, radius]`.
    pub(crate) fn new(radius: i64) -> Self {
        DenseHistogram { offset: radius, counts: vec![0; (2 * radius + 1) as usize] }
    }

    #[inline]
    pub(crate) fn add(&mut self, value: i64) {
        self.counts[(value + self.offset) as usize] += 1;
    }

    pub(crate) fn merge(mut self, other: DenseHistogram) -> DenseHistogram {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    pub(crate) fn into_distribution(self) -> ValueDistribution {
        let offset = self.offset;
        self.counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(i, c)| (i as i64 - offset, c as u128))
            .collect()
    }
}
