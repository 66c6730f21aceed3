//! The frequency sample T: one collection frequency per non-informative term.

use crate::{Error, Result};
use std::fmt::Write as _;
use std::io::BufRead;

/// Multiset of positive integers kept as a sorted histogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencySample {
    /// `(value, count)` sorted by value, counts ≥ 1.
    hist: Vec<(u64, u64)>,
    n: u64,
}

impl FrequencySample {
    /// Errors on an empty input or any zero value.
    pub fn new(mut values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if values.contains(&0) {
            return Err(Error::Domain(
                "frequency sample values must be >= 1".into(),
            ));
        }
        values.sort_unstable();
        let mut hist: Vec<(u64, u64)> = Vec::new();
        for v in values {
            match hist.last_mut() {
                Some((x, c)) if *x == v => *c += 1,
                _ => hist.push((v, 1)),
            }
        }
        let n = hist.iter().map(|&(_, c)| c).sum();
        Ok(Self { hist, n })
    }

    pub fn from_histogram(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut values = Vec::new();
        for (x, c) in pairs {
            values.extend(std::iter::repeat_n(x, c as usize));
        }
        Self::new(values)
    }

    pub fn len(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn histogram(&self) -> &[(u64, u64)] {
        &self.hist
    }

    pub fn max(&self) -> u64 {
        self.hist.last().map(|&(x, _)| x).unwrap_or(0)
    }

    pub fn mean(&self) -> f64 {
        let s: f64 = self.hist.iter().map(|&(x, c)| x as f64 * c as f64).sum();
        s / self.n as f64
    }

    /// Σ c · ln x.
    pub fn sum_ln(&self) -> f64 {
        self.hist.iter().map(|&(x, c)| c as f64 * (x as f64).ln()).sum()
    }

    /// Values in ascending order, with repetition.
    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.hist
            .iter()
            .flat_map(|&(x, c)| std::iter::repeat_n(x, c as usize))
    }

    /// Text form: a header comment then `value count` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("# frequency-sample n={}\n", self.n);
        for &(x, c) in &self.hist {
            let _ = writeln!(out, "{x} {c}");
        }
        out
    }

    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (Some(x), Some(c), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::parse(i + 1, "expected `value count`"));
            };
            let x: u64 = x.parse().map_err(|_| Error::parse(i + 1, "bad value"))?;
            let c: u64 = c.parse().map_err(|_| Error::parse(i + 1, "bad count"))?;
            pairs.push((x, c));
        }
        Self::from_histogram(pairs)
    }
}
