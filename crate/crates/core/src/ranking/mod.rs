//! DFR, information-model, Yule–Simon and Dirichlet-LM document scoring.

mod formulas;

pub use crate::special::log_gamma;
pub use formulas::{
    after_effect, induce_param, info_content, lm_dirichlet_term, normalize_tf, P2_CAP, SPL_EPS,
};

use crate::distfit::Family;
use crate::index::{CollectionStats, DocNo, InvertedIndex, Posting, TermStats};
use crate::special::NeumaierSum;
use crate::text::tokenize;
use crate::{Error, Exec, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    PL2,
    InL2,
    LLL2,
    SPLL2,
    YSL2,
    LMDir,
}

impl Model {
    pub const ALL: [Model; 6] = [Model::PL2, Model::InL2, Model::LLL2, Model::SPLL2, Model::YSL2, Model::LMDir];

    pub fn name(self) -> &'static str {
        match self {
            Model::PL2 => "PL2",
            Model::InL2 => "InL2",
            Model::LLL2 => "LLL2",
            Model::SPLL2 => "SPLL2",
            Model::YSL2 => "YSL2",
            Model::LMDir => "LMDir",
        }
    }

    pub fn is_dfr(self) -> bool {
        self != Model::LMDir
    }

    /// The ranking model whose randomness distribution is `family`, if there is one.
    pub fn for_family(family: Family) -> Option<Model> {
        match family {
            Family::YuleSimon => Some(Model::YSL2),
            Family::Poisson => Some(Model::PL2),
            Family::PowerLaw => Some(Model::SPLL2),
            _ => None,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown model `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AfterEffect {
    Laplace,
    Bernoulli,
}

impl AfterEffect {
    pub fn name(self) -> &'static str {
        match self {
            AfterEffect::Laplace => "laplace",
            AfterEffect::Bernoulli => "bernoulli",
        }
    }
}

impl FromStr for AfterEffect {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laplace" => Ok(AfterEffect::Laplace),
            "bernoulli" => Ok(AfterEffect::Bernoulli),
            other => Err(Error::Domain(format!("unknown after-effect `{other}`"))),
        }
    }
}

/// How the per-term parameter is induced from collection statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Induction {
    /// cf / |C|
    Tc,
    /// df / |C|
    Dc,
}

impl Induction {
    pub fn name(self) -> &'static str {
        match self {
            Induction::Tc => "tc",
            Induction::Dc => "dc",
        }
    }
}

impl FromStr for Induction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tc" | "T_tc" => Ok(Induction::Tc),
            "dc" | "T_dc" => Ok(Induction::Dc),
            other => Err(Error::Domain(format!("unknown induction `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankingConfig {
    pub model: Model,
    pub after_effect: AfterEffect,
    pub induction: Induction,
    pub c: f64,
    pub mu: f64,
    /// Apply Laplace to the raw in-document frequency instead of the normalized one.
    pub laplace_raw_tf: bool,
    /// Whether LLL2 and SPLL2 are multiplied by the after-effect risk at all.
    pub info_after_effect: bool,
    /// Use ρ = T + 1 instead of ρ = T for YSL2.
    pub rho_plus_one: bool,
}

impl RankingConfig {
    pub fn new(model: Model) -> Self {
        RankingConfig {
            model,
            after_effect: AfterEffect::Laplace,
            induction: Induction::Tc,
            c: 1.0,
            mu: 1000.0,
            laplace_raw_tf: false,
            info_after_effect: true,
            rho_plus_one: false,
        }
    }

    pub fn with_induction(mut self, induction: Induction) -> Self {
        self.induction = induction;
        self
    }

    pub fn with_after_effect(mut self, after_effect: AfterEffect) -> Self {
        self.after_effect = after_effect;
        self
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0) || !self.c.is_finite() {
            return Err(Error::Domain(format!("c must be > 0, got {}", self.c)));
        }
        if !(self.mu > 0.0) || !self.mu.is_finite() {
            return Err(Error::Domain(format!("mu must be > 0, got {}", self.mu)));
        }
        Ok(())
    }

    /// Short label such as `YSL2-dc-laplace-c1`, used as the run tag.
    pub fn label(&self) -> String {
        match self.model {
            Model::LMDir => format!("LMDir-mu{}", self.mu),
            m => format!("{}-{}-{}-c{}", m, self.induction.name(), self.after_effect.name(), self.c),
        }
    }

    fn uses_after_effect(&self) -> bool {
        match self.model {
            Model::LLL2 | Model::SPLL2 => self.info_after_effect,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredDoc {
    pub doc_id: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub query_id: String,
    /// f_{t,q}, iterated in lexicographic term order.
    pub terms: BTreeMap<String, u32>,
}

impl Query {
    /// Tokenizes `text` exactly as documents are tokenized.
    pub fn parse(query_id: impl Into<String>, text: &str) -> Self {
        let mut terms = BTreeMap::new();
        for tok in tokenize(text) {
            *terms.entry(tok).or_insert(0) += 1;
        }
        Query {
            query_id: query_id.into(),
            terms,
        }
    }
}

struct PreparedTerm<'a> {
    f_tq: u32,
    stats: TermStats,
    postings: &'a [Posting],
    param: f64,
}

/// Query terms resolved against an index, ready to score any document.
struct Prepared<'a> {
    config: RankingConfig,
    coll: CollectionStats,
    terms: Vec<PreparedTerm<'a>>,
}

impl<'a> Prepared<'a> {
    fn new(query: &Query, index: &'a InvertedIndex, config: &RankingConfig) -> Result<Self> {
        config.validate()?;
        let coll = index.scoring_collection()?;
        if !config.model.is_dfr() && coll.total_tokens == 0 {
            return Err(Error::Domain("collection has no tokens".into()));
        }
        let mut terms = Vec::new();
        for (term, &f_tq) in &query.terms {
            let Some(entry) = index.term(term) else { continue };
            if entry.stats.cf == 0 {
                continue;
            }
            let param = match config.model {
                Model::LMDir => 0.0,
                model => {
                    let p = induce_param(&entry.stats, &coll, config.induction)?;
                    match model {
                        Model::SPLL2 => p.clamp(SPL_EPS, 1.0 - SPL_EPS),
                        Model::YSL2 if config.rho_plus_one => p + 1.0,
                        _ => p,
                    }
                }
            };
            terms.push(PreparedTerm {
                f_tq,
                stats: entry.stats,
                postings: &entry.postings,
                param,
            });
        }
        Ok(Prepared {
            config: *config,
            coll,
            terms,
        })
    }

    fn candidates(&self) -> Vec<DocNo> {
        let mut docs: Vec<DocNo> = self.terms.iter().flat_map(|t| t.postings.iter().map(|p| p.doc)).collect();
        docs.sort_unstable();
        docs.dedup();
        docs
    }

    fn score(&self, doc: DocNo, doc_len: u32) -> Result<f64> {
        let cfg = &self.config;
        let mut sum = NeumaierSum::default();
        for t in &self.terms {
            let f_td = match t.postings.binary_search_by_key(&doc, |p| p.doc) {
                Ok(i) => t.postings[i].tf,
                Err(_) => 0,
            };
            if cfg.model == Model::LMDir {
                sum.add(lm_dirichlet_term(t.f_tq, f_td, doc_len, t.stats.cf, self.coll.total_tokens, cfg.mu));
                continue;
            }
            if f_td == 0 {
                continue;
            }
            let tfn = normalize_tf(f_td, doc_len, self.coll.avg_len, cfg.c)?;
            let info = info_content(cfg.model, tfn, t.param, &t.stats, &self.coll)?;
            let risk = if cfg.uses_after_effect() {
                1.0 - after_effect(cfg.after_effect, tfn, f_td, &t.stats, cfg.laplace_raw_tf)
            } else {
                1.0
            };
            sum.add(t.f_tq as f64 * info * risk);
        }
        Ok(sum.value())
    }
}

fn doc_number(index: &InvertedIndex, doc_id: &str) -> Result<DocNo> {
    index
        .doc_no(doc_id)
        .ok_or_else(|| Error::UnknownDocument(doc_id.to_owned()))
}

/// Σ over query terms in the document of f_tq · (−log2 P1) · (1 − P2).
pub fn score_dfr(query: &Query, doc_id: &str, index: &InvertedIndex, config: &RankingConfig) -> Result<f64> {
    if !config.model.is_dfr() {
        return Err(Error::Precondition("score_dfr needs a DFR model".into()));
    }
    let doc = doc_number(index, doc_id)?;
    Prepared::new(query, index, config)?.score(doc, index.doc_len(doc))
}

/// Dirichlet-smoothed query log-likelihood; query terms absent from the collection are skipped.
pub fn score_lm_dirichlet(query: &Query, doc_id: &str, index: &InvertedIndex, mu: f64) -> Result<f64> {
    let doc = doc_number(index, doc_id)?;
    let config = RankingConfig::new(Model::LMDir).with_mu(mu);
    Prepared::new(query, index, &config)?.score(doc, index.doc_len(doc))
}

/// Scores any document under `config`, dispatching on the model.
pub fn score(query: &Query, doc_id: &str, index: &InvertedIndex, config: &RankingConfig) -> Result<f64> {
    let doc = doc_number(index, doc_id)?;
    Prepared::new(query, index, config)?.score(doc, index.doc_len(doc))
}

/// Descending score, then ascending doc_id.
pub fn rank_order(a: &ScoredDoc, b: &ScoredDoc) -> std::cmp::Ordering {
    b.score.total_cmp(&a.score).then_with(|| a.doc_id.cmp(&b.doc_id))
}

/// Top-`k` documents containing at least one query term.
pub fn search(query: &Query, index: &InvertedIndex, config: &RankingConfig, k: usize) -> Result<Vec<ScoredDoc>> {
    search_with(query, index, config, k, Exec::default())
}

pub fn search_with(
    query: &Query,
    index: &InvertedIndex,
    config: &RankingConfig,
    k: usize,
    exec: Exec,
) -> Result<Vec<ScoredDoc>> {
    if k == 0 {
        return Err(Error::Precondition("k must be ≥ 1".into()));
    }
    let prepared = Prepared::new(query, index, config)?;
    let candidates = prepared.candidates();
    let scores = exec.map(&candidates, |&doc| prepared.score(doc, index.doc_len(doc)));
    let mut ranked = Vec::with_capacity(candidates.len());
    for (&doc, s) in candidates.iter().zip(scores) {
        ranked.push(ScoredDoc {
            doc_id: index.doc_id(doc).to_owned(),
            score: s?,
        });
    }
    ranked.sort_by(rank_order);
    ranked.truncate(k);
    Ok(ranked)
}

/// Runs every query; the output keeps the input order.
pub fn search_batch(
    queries: &[Query],
    index: &InvertedIndex,
    config: &RankingConfig,
    k: usize,
    exec: Exec,
) -> Result<Vec<(String, Vec<ScoredDoc>)>> {
    exec.map(queries, |q| {
        search_with(q, index, config, k, Exec::Sequential).map(|r| (q.query_id.clone(), r))
    })
    .into_iter()
    .collect()
}

/// TREC six-column run text: `qid Q0 docid rank score tag`.
pub fn format_run(results: &[(String, Vec<ScoredDoc>)], tag: &str) -> String {
    let mut out = String::new();
    for (qid, docs) in results {
        for (i, d) in docs.iter().enumerate() {
            let _ = writeln!(out, "{qid} Q0 {} {} {:.6} {tag}", d.doc_id, i + 1, d.score);
        }
    }
    out
}
