//! Seeded synthetic test collections with known informative and non-informative terms.
//!
//! Non-informative ("uniform") terms get a collection frequency drawn from a Yule–Simon law and
//! scatter each occurrence over a uniformly chosen document. Informative ("bursty") terms pack
//! 8–40 occurrences into one to three elite documents. Queries combine bursty terms; a document is
//! relevant when it is elite for a query term.

use crate::distfit::{sample_from, Distribution};
use crate::eval::{Judgments, Qrels};
use crate::index::Document;
use crate::termclass::SeedTerms;
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub num_docs: usize,
    /// Uniform terms beyond the non-informative seeds.
    pub uniform_terms: usize,
    /// Bursty terms beyond the informative seeds.
    pub bursty_terms: usize,
    pub num_queries: usize,
    pub rho: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            num_docs: 100,
            uniform_terms: 1500,
            bursty_terms: 300,
            num_queries: 20,
            rho: 1.7,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub docs: Vec<Document>,
    /// (query id, title) pairs.
    pub topics: Vec<(String, String)>,
    pub qrels: Qrels,
    pub uniform: BTreeSet<String>,
    pub bursty: BTreeSet<String>,
    pub seeds: SeedTerms,
}

impl Fixture {
    pub fn corpus_jsonl(&self) -> String {
        let mut out = String::new();
        for d in &self.docs {
            out.push_str(&serde_json::to_string(d).expect("documents serialize"));
            out.push('\n');
        }
        out
    }

    pub fn topics_text(&self) -> String {
        let mut out = String::new();
        for (q, t) in &self.topics {
            let _ = writeln!(out, "{q}\t{t}");
        }
        out
    }
}

pub fn generate(cfg: &SynthConfig) -> Result<Fixture> {
    if cfg.num_docs < 4 {
        return Err(Error::Precondition("a fixture needs at least 4 documents".into()));
    }
    let seeds = SeedTerms::builtin();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n_uniform = seeds.non_informative.len() + cfg.uniform_terms;
    let freqs = sample_from(&Distribution::YuleSimon { rho: cfg.rho }, n_uniform, cfg.seed ^ 0x5eed_f00d)?;

    let mut tokens: Vec<Vec<String>> = vec![Vec::new(); cfg.num_docs];
    let uniform_names: Vec<String> = seeds
        .non_informative
        .iter()
        .cloned()
        .chain((1..=cfg.uniform_terms).map(|i| format!("uni{i:04}")))
        .collect();
    for (name, &cf) in uniform_names.iter().zip(&freqs) {
        for _ in 0..cf {
            tokens[rng.random_range(0..cfg.num_docs)].push(name.clone());
        }
    }

    let bursty_names: Vec<String> = seeds
        .informative
        .iter()
        .cloned()
        .chain((1..=cfg.bursty_terms).map(|i| format!("bur{i:04}")))
        .collect();
    let mut elite: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for name in &bursty_names {
        let cf = rng.random_range(8..=40);
        let n_elite = rng.random_range(1..=3);
        let mut docs: Vec<usize> = (0..cfg.num_docs).collect();
        docs.partial_shuffle(&mut rng, n_elite);
        let chosen: Vec<usize> = docs[..n_elite].to_vec();
        // Every elite document gets at least one occurrence.
        for &d in &chosen {
            tokens[d].push(name.clone());
        }
        for _ in n_elite..cf {
            tokens[chosen[rng.random_range(0..n_elite)]].push(name.clone());
        }
        elite.insert(name.clone(), chosen);
    }

    let doc_name = |i: usize| format!("doc{:03}", i + 1);
    let mut docs = Vec::with_capacity(cfg.num_docs);
    for (i, mut toks) in tokens.into_iter().enumerate() {
        toks.shuffle(&mut rng);
        docs.push(Document::new(doc_name(i), toks.join(" ")));
    }

    let query_pool: Vec<&String> = bursty_names[seeds.informative.len()..].iter().collect();
    if query_pool.len() < 3 {
        return Err(Error::Precondition("too few bursty terms for queries".into()));
    }
    let mut topics = Vec::with_capacity(cfg.num_queries);
    let mut judgments = BTreeMap::new();
    for qi in 0..cfg.num_queries {
        let qid = format!("{}", qi + 1);
        let len = rng.random_range(2..=3);
        let mut pool = query_pool.clone();
        pool.partial_shuffle(&mut rng, len);
        let mut terms: Vec<&String> = pool[..len].to_vec();
        terms.sort();
        let mut hits: BTreeMap<usize, u32> = BTreeMap::new();
        for t in &terms {
            for &d in &elite[*t] {
                *hits.entry(d).or_insert(0) += 1;
            }
        }
        let mut judged = Judgments::new();
        for (&d, &h) in &hits {
            judged.insert(doc_name(d), if h >= 2 { 2 } else { 1 });
        }
        let mut others: Vec<usize> = (0..cfg.num_docs).filter(|d| !hits.contains_key(d)).collect();
        let n_neg = others.len().min(10);
        others.partial_shuffle(&mut rng, n_neg);
        for &d in &others[..n_neg] {
            judged.insert(doc_name(d), 0);
        }
        judgments.insert(qid.clone(), judged);
        topics.push((qid, terms.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(" ")));
    }

    Ok(Fixture {
        docs,
        topics,
        qrels: Qrels::from_judgments(judgments),
        uniform: uniform_names.into_iter().collect(),
        bursty: bursty_names.into_iter().collect(),
        seeds,
    })
}
