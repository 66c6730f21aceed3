//! Per-query comparison of two runs and a paired t-test.

use super::{Metric, Qrels, Run};
use crate::{Error, Result};
use statrs::distribution::{ContinuousCDF, StudentsT};
use std::collections::BTreeSet;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub struct QueryDiff {
    pub metric: Metric,
    /// metric(A) − metric(B), sorted by descending delta then query id.
    pub deltas: Vec<(String, f64)>,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl QueryDiff {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# metric {} queries {} positive {} negative {} zero {}",
            self.metric,
            self.deltas.len(),
            self.positive,
            self.negative,
            self.zero
        );
        for (q, d) in &self.deltas {
            let _ = writeln!(out, "{q} {d:.6}");
        }
        out
    }
}

/// Compares `a` and `b` on every query both runs cover and the qrels can evaluate.
pub fn per_query_diff(a: &Run, b: &Run, qrels: &Qrels, metric: Metric) -> Result<QueryDiff> {
    let qa: BTreeSet<&str> = a.query_ids().collect();
    let qb: BTreeSet<&str> = b.query_ids().collect();
    if qa != qb {
        let only_a: Vec<&str> = qa.difference(&qb).copied().collect();
        let only_b: Vec<&str> = qb.difference(&qa).copied().collect();
        return Err(Error::Eval(format!(
            "runs cover different queries: only in A [{}], only in B [{}]",
            only_a.join(","),
            only_b.join(",")
        )));
    }
    let mut deltas = Vec::new();
    for q in qa {
        let (Some(va), Some(vb)) = (qrels.metric(metric, q, a.ranking(q)), qrels.metric(metric, q, b.ranking(q))) else {
            continue;
        };
        deltas.push((q.to_owned(), va - vb));
    }
    deltas.sort_by(|x, y| y.1.total_cmp(&x.1).then_with(|| x.0.cmp(&y.0)));
    let positive = deltas.iter().filter(|d| d.1 > 0.0).count();
    let negative = deltas.iter().filter(|d| d.1 < 0.0).count();
    Ok(QueryDiff {
        metric,
        zero: deltas.len() - positive - negative,
        deltas,
        positive,
        negative,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTest {
    pub t: f64,
    pub df: f64,
    /// Two-sided.
    pub p_value: f64,
    pub significant: bool,
}

/// Two-sided paired t-test of `a` against `b` at level `alpha`.
pub fn paired_t_test(a: &[f64], b: &[f64], alpha: f64) -> Result<TTest> {
    if a.len() != b.len() {
        return Err(Error::Precondition("paired samples differ in length".into()));
    }
    if a.len() < 2 {
        return Err(Error::Precondition("paired t-test needs at least 2 pairs".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha must be in (0,1), got {alpha}")));
    }
    let n = a.len() as f64;
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = d.iter().sum::<f64>() / n;
    let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let df = n - 1.0;
    let (t, p_value) = if var == 0.0 {
        if mean == 0.0 {
            (0.0, 1.0)
        } else {
            (mean.signum() * f64::INFINITY, 0.0)
        }
    } else {
        let t = mean / (var / n).sqrt();
        let dist = StudentsT::new(0.0, 1.0, df).map_err(|e| Error::Domain(e.to_string()))?;
        (t, 2.0 * dist.sf(t.abs()))
    };
    Ok(TTest {
        t,
        df,
        p_value,
        significant: p_value < alpha,
    })
}
