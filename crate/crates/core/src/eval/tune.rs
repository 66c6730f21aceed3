//! Cross-validated grid search for c (DFR models) or μ (LMDir).

use super::{Metric, Qrels, Run};
use crate::index::InvertedIndex;
use crate::ranking::{search_batch, Model, Query, RankingConfig};
use crate::special::compensated_sum;
use crate::{Error, Exec, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const C_GRID: [f64; 6] = [0.5, 1.0, 2.0, 4.0, 6.0, 8.0];
pub const MU_GRID: [f64; 10] = [100.0, 500.0, 800.0, 1000.0, 2000.0, 3000.0, 4000.0, 5000.0, 8000.0, 10000.0];

#[derive(Debug, Clone, PartialEq)]
pub struct FoldResult {
    pub test_queries: Vec<String>,
    pub chosen: f64,
    pub train_objective: f64,
    pub test_objective: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TuneResult {
    pub parameter: String,
    pub objective: Metric,
    pub folds: Vec<FoldResult>,
    /// Mean of the per-fold test objectives.
    pub mean_test: f64,
}

impl TuneResult {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "parameter {}", self.parameter);
        let _ = writeln!(out, "objective {}", self.objective);
        for (i, f) in self.folds.iter().enumerate() {
            let _ = writeln!(
                out,
                "fold {} chosen {} train {:.6} test {:.6} queries {}",
                i + 1,
                f.chosen,
                f.train_objective,
                f.test_objective,
                f.test_queries.join(",")
            );
        }
        let _ = writeln!(out, "mean_test {:.6}", self.mean_test);
        out
    }
}

fn mean_over(values: &BTreeMap<String, Option<f64>>, qids: &[&String]) -> Option<f64> {
    let defined: Vec<f64> = qids.iter().filter_map(|q| values.get(*q).copied().flatten()).collect();
    if defined.is_empty() {
        None
    } else {
        Some(compensated_sum(defined.iter().copied()) / defined.len() as f64)
    }
}

/// Grid search with `folds`-fold cross-validation over `qids`.
///
/// `evaluate(g)` returns the per-query objective under grid value `g` (`None` where undefined).
/// Queries are sorted by id and dealt round-robin into folds; ties in the training objective go to
/// the smaller grid value.
pub fn tune_with<F>(qids: &[String], grid: &[f64], folds: usize, objective: Metric, evaluate: F) -> Result<TuneResult>
where
    F: Fn(f64) -> Result<BTreeMap<String, Option<f64>>>,
{
    if grid.is_empty() {
        return Err(Error::Precondition("parameter grid is empty".into()));
    }
    if folds < 2 {
        return Err(Error::Precondition("need at least 2 folds".into()));
    }
    let mut sorted: Vec<String> = qids.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() < folds {
        return Err(Error::Precondition(format!(
            "{} queries cannot fill {folds} folds",
            sorted.len()
        )));
    }
    let mut grid: Vec<f64> = grid.to_vec();
    if grid.iter().any(|g| !g.is_finite()) {
        return Err(Error::Precondition("grid values must be finite".into()));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let table: Vec<BTreeMap<String, Option<f64>>> = grid.iter().map(|&g| evaluate(g)).collect::<Result<_>>()?;

    let mut results = Vec::with_capacity(folds);
    for f in 0..folds {
        let test: Vec<&String> = sorted.iter().skip(f).step_by(folds).collect();
        let train: Vec<&String> = sorted
            .iter()
            .enumerate()
            .filter(|(i, _)| i % folds != f)
            .map(|(_, q)| q)
            .collect();
        let mut best: Option<(usize, f64)> = None;
        for (gi, values) in table.iter().enumerate() {
            if let Some(v) = mean_over(values, &train) {
                if best.is_none_or(|(_, b)| v > b) {
                    best = Some((gi, v));
                }
            }
        }
        let Some((gi, train_objective)) = best else {
            return Err(Error::Eval(format!("{objective} is undefined on every training query of fold {}", f + 1)));
        };
        let test_objective = mean_over(&table[gi], &test)
            .ok_or_else(|| Error::Eval(format!("{objective} is undefined on every test query of fold {}", f + 1)))?;
        results.push(FoldResult {
            test_queries: test.into_iter().cloned().collect(),
            chosen: grid[gi],
            train_objective,
            test_objective,
        });
    }
    let mean_test = compensated_sum(results.iter().map(|r| r.test_objective)) / folds as f64;
    Ok(TuneResult {
        parameter: String::new(),
        objective,
        folds: results,
        mean_test,
    })
}

/// Tunes c (or μ for LMDir) of `base` on `queries` against `qrels`.
#[allow(clippy::too_many_arguments)]
pub fn tune(
    queries: &[Query],
    qrels: &Qrels,
    index: &InvertedIndex,
    base: &RankingConfig,
    grid: &[f64],
    folds: usize,
    objective: Metric,
    k: usize,
    exec: Exec,
) -> Result<TuneResult> {
    let qids: Vec<String> = queries.iter().map(|q| q.query_id.clone()).collect();
    let lm = base.model == Model::LMDir;
    let mut result = tune_with(&qids, grid, folds, objective, |g| {
        let cfg = if lm { base.with_mu(g) } else { base.with_c(g) };
        let run = Run::from_results(&search_batch(queries, index, &cfg, k, exec)?);
        Ok(qids
            .iter()
            .map(|q| (q.clone(), qrels.metric(objective, q, run.ranking(q))))
            .collect())
    })?;
    result.parameter = if lm { "mu" } else { "c" }.to_owned();
    Ok(result)
}
