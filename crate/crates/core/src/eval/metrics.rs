//! Per-query effectiveness metrics over one query's judgments.
//!
//! `None` means the metric is undefined for the query (no positive grade).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Judgments of one query: doc_id → grade.
pub type Judgments = BTreeMap<String, u32>;

fn grade_of(judged: &Judgments, doc: &str) -> u32 {
    judged.get(doc).copied().unwrap_or(0)
}

fn relevant_count(judged: &Judgments) -> usize {
    judged.values().filter(|&&g| g > 0).count()
}

/// Fraction of the top `k` that is relevant; short rankings count as padded with non-relevant.
pub fn precision_at_k<S: AsRef<str>>(ranking: &[S], judged: &Judgments, k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let hits = ranking.iter().take(k).filter(|d| grade_of(judged, d.as_ref()) > 0).count();
    hits as f64 / k as f64
}

/// Binary preference with the non-relevant count capped at min(R, N).
pub fn bpref<S: AsRef<str>>(ranking: &[S], judged: &Judgments) -> Option<f64> {
    let r = relevant_count(judged);
    if r == 0 {
        return None;
    }
    let n = judged.len() - r;
    let cap = r.min(n);
    let mut above = 0usize;
    let mut total = 0.0;
    for d in ranking {
        match judged.get(d.as_ref()) {
            Some(&g) if g > 0 => {
                total += if cap == 0 {
                    1.0
                } else {
                    1.0 - above.min(cap) as f64 / cap as f64
                };
            }
            Some(_) => above += 1,
            None => {}
        }
    }
    Some(total / r as f64)
}

/// Expected reciprocal rank at depth `k`, with grades normalized by `g_max`.
pub fn err_at_k<S: AsRef<str>>(ranking: &[S], judged: &Judgments, k: usize, g_max: u32) -> Option<f64> {
    if g_max == 0 || relevant_count(judged) == 0 {
        return None;
    }
    let denom = 2f64.powi(g_max as i32);
    let mut not_stopped = 1.0;
    let mut err = 0.0;
    for (i, d) in ranking.iter().take(k).enumerate() {
        let g = grade_of(judged, d.as_ref()).min(g_max);
        let r = (2f64.powi(g as i32) - 1.0) / denom;
        err += not_stopped * r / (i + 1) as f64;
        not_stopped *= 1.0 - r;
    }
    Some(err)
}

fn dcg(grades: impl Iterator<Item = u32>) -> f64 {
    grades
        .enumerate()
        .map(|(i, g)| (2f64.powi(g as i32) - 1.0) / ((i + 2) as f64).log2())
        .sum()
}

/// nDCG at cutoff `k`, or over the whole ranking with `None` (the ideal is then uncut).
pub fn ndcg<S: AsRef<str>>(ranking: &[S], judged: &Judgments, k: Option<usize>) -> Option<f64> {
    if relevant_count(judged) == 0 {
        return None;
    }
    let depth = k.unwrap_or(usize::MAX);
    let mut ideal: Vec<u32> = judged.values().copied().filter(|&g| g > 0).collect();
    ideal.sort_unstable_by(|a, b| b.cmp(a));
    let idcg = dcg(ideal.into_iter().take(depth));
    let got = dcg(ranking.iter().take(depth).map(|d| grade_of(judged, d.as_ref())));
    Some(got / idcg)
}

pub fn ndcg_at_k<S: AsRef<str>>(ranking: &[S], judged: &Judgments, k: usize) -> Option<f64> {
    ndcg(ranking, judged, Some(k))
}

/// The reported metrics, in reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    P10,
    Bpref,
    Err20,
    Ndcg10,
    Ndcg,
}

impl Metric {
    pub const ALL: [Metric; 5] = [Metric::P10, Metric::Bpref, Metric::Err20, Metric::Ndcg10, Metric::Ndcg];

    pub fn name(self) -> &'static str {
        match self {
            Metric::P10 => "p10",
            Metric::Bpref => "bpref",
            Metric::Err20 => "err20",
            Metric::Ndcg10 => "ndcg10",
            Metric::Ndcg => "ndcg",
        }
    }

    /// `g_max` is the qrels-wide maximum grade.
    pub fn compute<S: AsRef<str>>(self, ranking: &[S], judged: &Judgments, g_max: u32) -> Option<f64> {
        if relevant_count(judged) == 0 {
            return None;
        }
        match self {
            Metric::P10 => Some(precision_at_k(ranking, judged, 10)),
            Metric::Bpref => bpref(ranking, judged),
            Metric::Err20 => err_at_k(ranking, judged, 20, g_max),
            Metric::Ndcg10 => ndcg(ranking, judged, Some(10)),
            Metric::Ndcg => ndcg(ranking, judged, None),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown metric `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(pairs: &[(&str, u32)]) -> Judgments {
        pairs.iter().map(|&(d, g)| (d.to_owned(), g)).collect()
    }

    #[test]
    fn precision() {
        let judged = j(&[("a", 1), ("b", 1), ("c", 1), ("d", 1), ("e", 1)]);
        let ranking = ["a", "x", "b", "y", "c", "z", "d", "w", "e", "v"];
        assert_eq!(precision_at_k(&ranking, &judged, 10), 0.5);
        assert_eq!(precision_at_k::<&str>(&[], &judged, 10), 0.0);
        let all: Vec<String> = (0..10).map(|i| format!("r{i}")).collect();
        let judged_all: Judgments = all.iter().map(|d| (d.clone(), 2)).collect();
        assert_eq!(precision_at_k(&all, &judged_all, 10), 1.0);
    }

    #[test]
    fn bpref_cases() {
        let judged = j(&[("r", 1), ("n", 0)]);
        assert_eq!(bpref(&["n", "r"], &judged), Some(0.0));
        assert_eq!(bpref(&["r", "n"], &judged), Some(1.0));
        assert_eq!(bpref(&["x", "n"], &judged), Some(0.0));
        // Unjudged documents do not count as non-relevant.
        assert_eq!(bpref(&["u", "r"], &judged), Some(1.0));
        // No judged non-relevant: fraction of relevant retrieved.
        let only_rel = j(&[("a", 1), ("b", 1)]);
        assert_eq!(bpref(&["a"], &only_rel), Some(0.5));
        assert_eq!(bpref(&["n"], &j(&[("n", 0)])), None);
    }

    #[test]
    fn err_cases() {
        let judged = j(&[("a", 1), ("b", 1)]);
        assert_eq!(err_at_k(&["a"], &judged, 20, 1), Some(0.5));
        assert_eq!(err_at_k(&["a", "b"], &judged, 20, 1), Some(0.625));
        assert_eq!(err_at_k(&["x", "y"], &judged, 20, 1), Some(0.0));
        assert_eq!(err_at_k(&["a"], &judged, 20, 0), None);
    }

    #[test]
    fn ndcg_cases() {
        let judged = j(&[("a", 1), ("b", 0), ("c", 2)]);
        let v = ndcg_at_k(&["a", "b", "c"], &judged, 3).unwrap();
        let want = 2.5 / (3.0 + 1.0 / 3f64.log2());
        assert!((v - want).abs() < 1e-15);
        assert!((v - 0.6885).abs() < 1e-4);
        assert_eq!(ndcg_at_k(&["c", "a", "b"], &judged, 3), Some(1.0));
        assert_eq!(ndcg::<&str>(&[], &judged, None), Some(0.0));
        assert_eq!(ndcg(&["b"], &j(&[("b", 0)]), None), None);
    }

    #[test]
    fn metric_names() {
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
        }
        assert!("map".parse::<Metric>().is_err());
    }
}
