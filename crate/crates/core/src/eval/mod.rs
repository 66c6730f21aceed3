//! Relevance judgments, runs, topics, metric reports, tuning and per-query comparisons.

mod diff;
mod metrics;
mod tune;

pub use diff::{paired_t_test, per_query_diff, QueryDiff, TTest};
pub use metrics::{bpref, err_at_k, ndcg, ndcg_at_k, precision_at_k, Judgments, Metric};
pub use tune::{tune, tune_with, FoldResult, TuneResult, C_GRID, MU_GRID};

use crate::ranking::{Query, ScoredDoc};
use crate::special::compensated_sum;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::BufRead;

/// Graded judgments keyed by query then document.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Qrels {
    queries: BTreeMap<String, Judgments>,
}

impl Qrels {
    /// Parses TREC `qid 0 docid grade` lines. Negative grades become 0; for repeated pairs the
    /// last line wins and a warning is returned.
    pub fn parse<R: BufRead>(reader: R) -> Result<(Self, Vec<String>)> {
        let mut queries: BTreeMap<String, Judgments> = BTreeMap::new();
        let mut warnings = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let [qid, _, doc, grade] = fields[..] else {
                return Err(Error::parse(lineno, format!("expected 4 columns, found {}", fields.len())));
            };
            let grade: i64 = grade
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad grade `{grade}`")))?;
            let grade = grade.clamp(0, u32::MAX as i64) as u32;
            if queries.entry(qid.to_owned()).or_default().insert(doc.to_owned(), grade).is_some() {
                warnings.push(format!("line {lineno}: duplicate judgment for ({qid}, {doc}); keeping the last"));
            }
        }
        Ok((Qrels { queries }, warnings))
    }

    pub fn from_judgments(queries: BTreeMap<String, Judgments>) -> Self {
        Qrels { queries }
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }

    pub fn grade(&self, qid: &str, doc: &str) -> Option<u32> {
        self.queries.get(qid)?.get(doc).copied()
    }

    pub fn judgments(&self, qid: &str) -> Option<&Judgments> {
        self.queries.get(qid)
    }

    pub fn query_ids(&self) -> impl Iterator<Item = &str> {
        self.queries.keys().map(String::as_str)
    }

    pub fn relevant_count(&self, qid: &str) -> usize {
        self.queries.get(qid).map_or(0, |j| j.values().filter(|&&g| g > 0).count())
    }

    /// Largest grade over all queries.
    pub fn max_grade(&self) -> u32 {
        self.queries.values().flat_map(|j| j.values().copied()).max().unwrap_or(0)
    }

    /// Metric value for one query, `None` when undefined or unjudged.
    pub fn metric<S: AsRef<str>>(&self, metric: Metric, qid: &str, ranking: &[S]) -> Option<f64> {
        metric.compute(ranking, self.queries.get(qid)?, self.max_grade())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (qid, j) in &self.queries {
            for (doc, g) in j {
                let _ = writeln!(out, "{qid} 0 {doc} {g}");
            }
        }
        out
    }
}

/// Ranked document ids per query.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Run {
    queries: BTreeMap<String, Vec<String>>,
}

impl Run {
    pub fn from_results(results: &[(String, Vec<ScoredDoc>)]) -> Self {
        Run {
            queries: results
                .iter()
                .map(|(q, docs)| (q.clone(), docs.iter().map(|d| d.doc_id.clone()).collect()))
                .collect(),
        }
    }

    /// Parses TREC `qid Q0 docid rank score tag` lines, ordering each query by the rank column.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut rows: BTreeMap<String, Vec<(u64, String)>> = BTreeMap::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let [qid, _, doc, rank, score, _] = fields[..] else {
                return Err(Error::parse(lineno, format!("expected 6 columns, found {}", fields.len())));
            };
            let rank: u64 = rank.parse().map_err(|_| Error::parse(lineno, format!("bad rank `{rank}`")))?;
            score
                .parse::<f64>()
                .map_err(|_| Error::parse(lineno, format!("bad score `{score}`")))?;
            rows.entry(qid.to_owned()).or_default().push((rank, doc.to_owned()));
        }
        let mut queries = BTreeMap::new();
        for (qid, mut docs) in rows {
            docs.sort_by_key(|&(r, _)| r);
            let mut seen = std::collections::HashSet::new();
            for (_, d) in &docs {
                if !seen.insert(d.as_str()) {
                    return Err(Error::Format(format!("query {qid} lists document {d} twice")));
                }
            }
            queries.insert(qid, docs.into_iter().map(|(_, d)| d).collect());
        }
        Ok(Run { queries })
    }

    pub fn ranking(&self, qid: &str) -> &[String] {
        self.queries.get(qid).map_or(&[], Vec::as_slice)
    }

    pub fn query_ids(&self) -> impl Iterator<Item = &str> {
        self.queries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }
}

/// Reads `qid<TAB>title text` lines; blank lines are skipped.
pub fn parse_topics<R: BufRead>(reader: R) -> Result<Vec<Query>> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let Some((qid, title)) = line.split_once('\t') else {
            return Err(Error::parse(i + 1, "expected `qid<TAB>title`"));
        };
        let qid = qid.trim();
        if qid.is_empty() {
            return Err(Error::parse(i + 1, "empty query id"));
        }
        if !seen.insert(qid.to_owned()) {
            return Err(Error::parse(i + 1, format!("duplicate query id `{qid}`")));
        }
        out.push(Query::parse(qid, title));
    }
    Ok(out)
}

/// Per-query metric values and their macro averages.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    /// Evaluated queries in id order, one value per entry of `Metric::ALL`.
    pub per_query: BTreeMap<String, [f64; 5]>,
    pub means: [f64; 5],
    /// Judged queries without any relevant document.
    pub excluded: Vec<String>,
}

impl MetricReport {
    pub fn mean(&self, metric: Metric) -> f64 {
        self.means[metric as usize]
    }

    pub fn value(&self, qid: &str, metric: Metric) -> Option<f64> {
        self.per_query.get(qid).map(|v| v[metric as usize])
    }

    /// trec_eval style `metric<TAB>qid<TAB>value` lines, followed by the `all` means.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (qid, vals) in &self.per_query {
            for m in Metric::ALL {
                let _ = writeln!(out, "{}\t{qid}\t{:.6}", m, vals[m as usize]);
            }
        }
        for q in &self.excluded {
            let _ = writeln!(out, "excluded\t{q}\tno-relevant");
        }
        let _ = writeln!(out, "num_q\tall\t{}", self.per_query.len());
        for m in Metric::ALL {
            let _ = writeln!(out, "{}\tall\t{:.6}", m, self.means[m as usize]);
        }
        out
    }
}

/// Evaluates every judged query with at least one relevant document. Queries missing from the
/// run count as empty rankings.
pub fn evaluate(run: &Run, qrels: &Qrels) -> Result<MetricReport> {
    let g_max = qrels.max_grade();
    let mut per_query = BTreeMap::new();
    let mut excluded = Vec::new();
    for (qid, judged) in &qrels.queries {
        let ranking = run.ranking(qid);
        let mut vals = [0.0; 5];
        let mut defined = true;
        for m in Metric::ALL {
            match m.compute(ranking, judged, g_max) {
                Some(v) => vals[m as usize] = v,
                None => defined = false,
            }
        }
        if defined {
            per_query.insert(qid.clone(), vals);
        } else {
            excluded.push(qid.clone());
        }
    }
    if per_query.is_empty() {
        return Err(Error::Eval("no judged query has a relevant document".into()));
    }
    let mut means = [0.0; 5];
    for m in Metric::ALL {
        let i = m as usize;
        means[i] = compensated_sum(per_query.values().map(|v| v[i])) / per_query.len() as f64;
    }
    Ok(MetricReport {
        per_query,
        means,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qrels(text: &str) -> Qrels {
        Qrels::parse(text.as_bytes()).unwrap().0
    }

    #[test]
    fn qrels_parsing() {
        let q = qrels("1 0 d1 2\n1 0 d2 -1\n\n2 0 d9 0\n");
        assert_eq!(q.grade("1", "d1"), Some(2));
        assert_eq!(q.grade("1", "d2"), Some(0));
        assert_eq!(q.grade("1", "d3"), None);
        assert_eq!(q.max_grade(), 2);
        assert_eq!(q.relevant_count("2"), 0);
        let (q, warns) = Qrels::parse("1 0 d1 1\n1 0 d1 3\n".as_bytes()).unwrap();
        assert_eq!(q.grade("1", "d1"), Some(3));
        assert_eq!(warns.len(), 1);
        let err = Qrels::parse("1 0 d1 1\n1 0 d1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(Qrels::parse("1 0 d1 x\n".as_bytes()).is_err());
        assert!(qrels("").is_empty());
    }

    #[test]
    fn qrels_text_round_trip() {
        let q = qrels("2 0 b 1\n1 0 a 0\n");
        assert_eq!(qrels(&q.to_text()), q);
    }

    #[test]
    fn run_parsing_orders_by_rank() {
        let r = Run::parse("1 Q0 b 2 0.5 t\n1 Q0 a 1 0.9 t\n2 Q0 c 1 1 t\n".as_bytes()).unwrap();
        assert_eq!(r.ranking("1"), ["a", "b"]);
        assert_eq!(r.ranking("3"), [] as [String; 0]);
        assert!(Run::parse("1 Q0 a 1 x t\n".as_bytes()).is_err());
        assert!(Run::parse("1 Q0 a 1 1 t\n1 Q0 a 2 1 t\n".as_bytes()).is_err());
        assert!(matches!(
            Run::parse("1 Q0 a 1\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn topics() {
        let t = parse_topics("1\tApple pie\n\n2\tbanana\n".as_bytes()).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].terms.len(), 2);
        assert!(parse_topics("1 apple\n".as_bytes()).is_err());
        assert!(parse_topics("1\ta\n1\tb\n".as_bytes()).is_err());
    }

    #[test]
    fn evaluate_excludes_queries_without_relevant() {
        let q = qrels("1 0 a 1\n1 0 b 0\n2 0 c 0\n3 0 z 2\n");
        let run = Run::parse("1 Q0 a 1 2 t\n1 Q0 b 2 1 t\n".as_bytes()).unwrap();
        let rep = evaluate(&run, &q).unwrap();
        assert_eq!(rep.excluded, ["2"]);
        assert_eq!(rep.per_query.len(), 2);
        assert_eq!(rep.value("1", Metric::Ndcg), Some(1.0));
        assert_eq!(rep.value("3", Metric::Ndcg), Some(0.0));
        assert_eq!(rep.mean(Metric::Ndcg), 0.5);
        assert_eq!(rep.value("1", Metric::P10), Some(0.1));
        // g_max is 2 across the qrels, so grade 1 at rank 1 gives 1/4.
        assert_eq!(rep.value("1", Metric::Err20), Some(0.25));
        assert!(rep.to_text().contains("ndcg\tall\t0.500000"));
        assert!(evaluate(&run, &Qrels::default()).is_err());
    }
}
