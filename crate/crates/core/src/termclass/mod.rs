//! Informative / non-informative term classification.
//!
//! Seed terms with known labels are featurized against the collection, a linear hinge-loss
//! classifier is trained on standardized features with k-fold cross-validation, and the winning
//! classifier labels every vocabulary term. The collection frequencies of the terms it calls
//! non-informative form the sample that the randomness models are fitted to.

mod features;
pub mod svm;

pub use features::{gain, idf, ridf, term_features, FeatureKind, TermFeatures};

use crate::index::InvertedIndex;
use crate::par::Exec;
use crate::sample::FrequencySample;
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::BufRead;

/// Regularization strengths tried inside cross-validation.
pub const LAMBDA_GRID: [f64; 4] = [0.01, 0.1, 1.0, 10.0];

const BUILTIN_SEEDS: &str = include_str!("../../data/seed_terms.txt");

/// Labelled seed terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedTerms {
    pub informative: Vec<String>,
    pub non_informative: Vec<String>,
}

impl SeedTerms {
    /// The shipped list of 40 informative and 40 non-informative terms.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_SEEDS.as_bytes()).expect("builtin seed list parses")
    }

    /// `<term> <info|noninfo>` per line; `#` starts a comment.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut informative = Vec::new();
        let mut non_informative = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (Some(term), Some(label), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::parse(i + 1, "expected `<term> <label>`"));
            };
            match label {
                "info" => informative.push(term.to_owned()),
                "noninfo" => non_informative.push(term.to_owned()),
                other => return Err(Error::parse(i + 1, format!("unknown label `{other}`"))),
            }
        }
        let a: BTreeSet<_> = informative.iter().collect();
        if let Some(t) = non_informative.iter().find(|t| a.contains(t)) {
            return Err(Error::Precondition(format!("seed term `{t}` carries both labels")));
        }
        Ok(Self {
            informative,
            non_informative,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.informative {
            let _ = writeln!(out, "{t} info");
        }
        for t in &self.non_informative {
            let _ = writeln!(out, "{t} noninfo");
        }
        out
    }
}

/// A labelled feature vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Example {
    pub term: String,
    pub features: TermFeatures,
    pub informative: bool,
}

/// Linear classifier over a feature subset, with the standardization learned at training time.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearTermClassifier {
    pub features: Vec<FeatureKind>,
    pub weights: Vec<f64>,
    pub bias: f64,
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    pub lambda: f64,
}

impl LinearTermClassifier {
    fn fit(examples: &[&Example], features: &[FeatureKind], lambda: f64) -> Self {
        let d = features.len();
        let n = examples.len().max(1) as f64;
        let mut means = vec![0.0; d];
        for e in examples {
            for (j, &f) in features.iter().enumerate() {
                means[j] += e.features.get(f) / n;
            }
        }
        let mut stds = vec![0.0; d];
        for e in examples {
            for (j, &f) in features.iter().enumerate() {
                stds[j] += (e.features.get(f) - means[j]).powi(2) / n;
            }
        }
        for s in &mut stds {
            *s = s.sqrt();
            if !(*s > 1e-12) {
                *s = 1.0;
            }
        }
        let mut clf = Self {
            features: features.to_vec(),
            weights: vec![0.0; d],
            bias: 0.0,
            means,
            stds,
            lambda,
        };
        let rows: Vec<Vec<f64>> = examples.iter().map(|e| clf.standardize(&e.features)).collect();
        let labels: Vec<f64> = examples
            .iter()
            .map(|e| if e.informative { 1.0 } else { -1.0 })
            .collect();
        let model = svm::train(&rows, &labels, lambda);
        clf.weights = model.weights;
        clf.bias = model.bias;
        clf
    }

    fn standardize(&self, f: &TermFeatures) -> Vec<f64> {
        self.features
            .iter()
            .enumerate()
            .map(|(j, &k)| (f.get(k) - self.means[j]) / self.stds[j])
            .collect()
    }

    pub fn decision(&self, f: &TermFeatures) -> f64 {
        self.standardize(f)
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| x * w)
            .sum::<f64>()
            + self.bias
    }

    /// Points on the decision boundary count as non-informative.
    pub fn is_informative(&self, f: &TermFeatures) -> bool {
        self.decision(f) > 0.0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let names: Vec<_> = self.features.iter().map(|f| f.name()).collect();
        let _ = writeln!(out, "features {}", names.join(","));
        let _ = writeln!(out, "lambda {}", self.lambda);
        let _ = writeln!(out, "bias {}", self.bias);
        for (j, f) in self.features.iter().enumerate() {
            let _ = writeln!(out, "weight {f} {}", self.weights[j]);
            let _ = writeln!(out, "mean {f} {}", self.means[j]);
            let _ = writeln!(out, "std {f} {}", self.stds[j]);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut features: Option<Vec<FeatureKind>> = None;
        let mut lambda = None;
        let mut bias = None;
        let mut per: Vec<(FeatureKind, &str, f64)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<f64>().map_err(|_| Error::parse(i + 1, "bad number"));
            match parts.as_slice() {
                ["features", list] => {
                    features = Some(list.split(',').map(str::parse).collect::<Result<_>>()?)
                }
                ["lambda", v] => lambda = Some(num(v)?),
                ["bias", v] => bias = Some(num(v)?),
                [key @ ("weight" | "mean" | "std"), f, v] => per.push((f.parse()?, key, num(v)?)),
                _ => return Err(Error::parse(i + 1, format!("unexpected line `{line}`"))),
            }
        }
        let features = features.ok_or_else(|| Error::parse(0, "missing features"))?;
        let lookup = |kind: FeatureKind, key: &str| {
            per.iter()
                .find(|(f, k, _)| *f == kind && *k == key)
                .map(|t| t.2)
                .ok_or_else(|| Error::parse(0, format!("missing {key} for {kind}")))
        };
        let mut weights = Vec::new();
        let mut means = Vec::new();
        let mut stds = Vec::new();
        for &f in &features {
            weights.push(lookup(f, "weight")?);
            means.push(lookup(f, "mean")?);
            stds.push(lookup(f, "std")?);
        }
        Ok(Self {
            features,
            weights,
            bias: bias.ok_or_else(|| Error::parse(0, "missing bias"))?,
            means,
            stds,
            lambda: lambda.ok_or_else(|| Error::parse(0, "missing lambda"))?,
        })
    }
}

fn accuracy(clf: &LinearTermClassifier, test: &[&Example]) -> f64 {
    let hits = test
        .iter()
        .filter(|e| clf.is_informative(&e.features) == e.informative)
        .count();
    hits as f64 / test.len() as f64
}

/// Round-robin folds over examples sorted by term. Returns fold index per position.
fn split<'a>(sorted: &[&'a Example], folds: usize, fold: usize) -> (Vec<&'a Example>, Vec<&'a Example>) {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (i, e) in sorted.iter().enumerate() {
        if i % folds == fold {
            test.push(*e);
        } else {
            train.push(*e);
        }
    }
    (train, test)
}

/// Plain k-fold accuracy for a fixed λ; mean over non-empty folds.
fn cv_fixed(sorted: &[&Example], features: &[FeatureKind], folds: usize, lambda: f64) -> f64 {
    let k = folds.min(sorted.len());
    let mut total = 0.0;
    let mut used = 0;
    for fold in 0..k {
        let (train, test) = split(sorted, k, fold);
        if test.is_empty() || train.is_empty() {
            continue;
        }
        total += accuracy(&LinearTermClassifier::fit(&train, features, lambda), &test);
        used += 1;
    }
    if used == 0 {
        0.0
    } else {
        total / used as f64
    }
}

/// λ with the best k-fold accuracy; ties keep the earlier grid entry.
fn choose_lambda(sorted: &[&Example], features: &[FeatureKind], folds: usize) -> f64 {
    if sorted.len() < 2 {
        return LAMBDA_GRID[0];
    }
    let mut best = (LAMBDA_GRID[0], f64::NEG_INFINITY);
    for &lambda in &LAMBDA_GRID {
        let acc = cv_fixed(sorted, features, folds, lambda);
        if acc > best.1 + 1e-12 {
            best = (lambda, acc);
        }
    }
    best.0
}

fn sorted_examples(examples: &[Example]) -> Vec<&Example> {
    let mut sorted: Vec<&Example> = examples.iter().collect();
    sorted.sort_by(|a, b| a.term.cmp(&b.term));
    sorted
}

/// Cross-validated training on explicit examples.
///
/// The outer folds estimate accuracy; inside each, λ is chosen by a nested k-fold search on
/// the training part only. The returned classifier is refit on all examples with λ chosen by
/// k-fold over all of them.
pub fn train_on_examples(
    examples: &[Example],
    features: &[FeatureKind],
    folds: usize,
) -> Result<(LinearTermClassifier, f64)> {
    if folds < 2 {
        return Err(Error::Precondition("need at least two folds".into()));
    }
    if features.is_empty() {
        return Err(Error::Precondition("feature subset is empty".into()));
    }
    let pos = examples.iter().filter(|e| e.informative).count();
    let neg = examples.len() - pos;
    if pos < 2 || neg < 2 {
        return Err(Error::Training(format!(
            "need at least two examples of each class, got {pos} informative and {neg} non-informative"
        )));
    }
    let sorted = sorted_examples(examples);
    let k = folds.min(sorted.len());
    let mut total = 0.0;
    let mut used = 0;
    for fold in 0..k {
        let (train, test) = split(&sorted, k, fold);
        if test.is_empty() {
            continue;
        }
        let lambda = choose_lambda(&train, features, folds);
        total += accuracy(&LinearTermClassifier::fit(&train, features, lambda), &test);
        used += 1;
    }
    let cv_accuracy = total / used as f64;
    let lambda = choose_lambda(&sorted, features, folds);
    let clf = LinearTermClassifier::fit(&sorted, features, lambda);
    Ok((clf, cv_accuracy))
}

/// Every non-empty subset of `available`, smallest first, then in name order.
pub fn feature_subsets(available: &[FeatureKind]) -> Vec<Vec<FeatureKind>> {
    let mut avail = available.to_vec();
    avail.sort();
    avail.dedup();
    let mut out: Vec<Vec<FeatureKind>> = (1u32..(1 << avail.len()))
        .map(|mask| {
            avail
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &f)| f)
                .collect()
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[derive(Debug, Clone)]
pub struct SubsetSearch {
    pub features: Vec<FeatureKind>,
    pub classifier: LinearTermClassifier,
    pub cv_accuracy: f64,
    /// Every evaluated subset with its accuracy, in evaluation order.
    pub evaluated: Vec<(Vec<FeatureKind>, f64)>,
}

/// Exhaustive subset search; the best accuracy wins, ties go to the earlier subset in
/// [`feature_subsets`] order.
pub fn select_subset_on_examples(examples: &[Example], folds: usize, exec: Exec) -> Result<SubsetSearch> {
    let subsets = feature_subsets(&FeatureKind::ALL);
    let results = exec.map(&subsets, |s| train_on_examples(examples, s, folds));
    let mut evaluated = Vec::with_capacity(subsets.len());
    let mut best: Option<(usize, LinearTermClassifier, f64)> = None;
    for (i, r) in results.into_iter().enumerate() {
        let (clf, acc) = r?;
        evaluated.push((subsets[i].clone(), acc));
        if best.as_ref().is_none_or(|b| acc > b.2 + 1e-12) {
            best = Some((i, clf, acc));
        }
    }
    let (i, classifier, cv_accuracy) = best.expect("at least one subset");
    Ok(SubsetSearch {
        features: subsets[i].clone(),
        classifier,
        cv_accuracy,
        evaluated,
    })
}

/// Seed terms featurized against an index. Terms missing from the index are reported.
pub fn seed_examples(seeds: &SeedTerms, index: &InvertedIndex) -> Result<(Vec<Example>, Vec<String>)> {
    let coll = index.scoring_collection()?;
    let mut examples = Vec::new();
    let mut absent = Vec::new();
    let labelled = seeds
        .informative
        .iter()
        .map(|t| (t, true))
        .chain(seeds.non_informative.iter().map(|t| (t, false)));
    for (term, informative) in labelled {
        match index.term_stats(term) {
            Some(stats) => examples.push(Example {
                term: term.clone(),
                features: term_features(term, &stats, &coll)?,
                informative,
            }),
            None => absent.push(term.clone()),
        }
    }
    let pos = examples.iter().filter(|e| e.informative).count();
    for (count, name) in [(pos, "informative"), (examples.len() - pos, "non-informative")] {
        if count == 0 {
            return Err(Error::Training(format!("no {name} seed term occurs in the collection")));
        }
    }
    Ok((examples, absent))
}

#[derive(Debug, Clone)]
pub struct Training {
    pub classifier: LinearTermClassifier,
    pub cv_accuracy: f64,
    pub absent_seeds: Vec<String>,
    pub evaluated: Vec<(Vec<FeatureKind>, f64)>,
}

pub fn train_classifier(
    seeds: &SeedTerms,
    index: &InvertedIndex,
    features: &[FeatureKind],
    folds: usize,
) -> Result<Training> {
    let (examples, absent_seeds) = seed_examples(seeds, index)?;
    let (classifier, cv_accuracy) = train_on_examples(&examples, features, folds)?;
    Ok(Training {
        evaluated: vec![(classifier.features.clone(), cv_accuracy)],
        classifier,
        cv_accuracy,
        absent_seeds,
    })
}

pub fn select_feature_subset(seeds: &SeedTerms, index: &InvertedIndex, folds: usize) -> Result<Training> {
    let (examples, absent_seeds) = seed_examples(seeds, index)?;
    let search = select_subset_on_examples(&examples, folds, Exec::default())?;
    Ok(Training {
        classifier: search.classifier,
        cv_accuracy: search.cv_accuracy,
        absent_seeds,
        evaluated: search.evaluated,
    })
}

/// Label of every vocabulary term, in term order.
#[derive(Debug, Clone, PartialEq)]
pub struct TermClassMap {
    pub labels: Vec<(String, bool)>,
}

impl TermClassMap {
    pub fn informative_count(&self) -> usize {
        self.labels.iter().filter(|(_, i)| *i).count()
    }

    /// `<term> <info|noninfo>` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.labels.len() * 12);
        for (t, informative) in &self.labels {
            let _ = writeln!(out, "{t} {}", if *informative { "info" } else { "noninfo" });
        }
        out
    }

    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let seeds = SeedTerms::parse(reader)?;
        let mut labels: Vec<(String, bool)> = seeds
            .informative
            .into_iter()
            .map(|t| (t, true))
            .chain(seeds.non_informative.into_iter().map(|t| (t, false)))
            .collect();
        labels.sort();
        Ok(Self { labels })
    }

    /// Collection frequencies of the non-informative terms.
    pub fn noninformative_sample(&self, index: &InvertedIndex) -> Result<FrequencySample> {
        let mut values = Vec::new();
        for (term, informative) in &self.labels {
            if *informative {
                continue;
            }
            let stats = index
                .term_stats(term)
                .ok_or_else(|| Error::Precondition(format!("term `{term}` not in the index")))?;
            values.push(stats.cf);
        }
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        FrequencySample::new(values)
    }
}

pub fn classify_vocabulary(
    index: &InvertedIndex,
    classifier: &LinearTermClassifier,
    exec: Exec,
) -> Result<TermClassMap> {
    let coll = index.scoring_collection()?;
    let terms: Vec<(&str, crate::index::TermStats)> =
        index.terms().map(|(t, e)| (t, e.stats)).collect();
    let labels = exec
        .map(&terms, |&(t, stats)| {
            term_features(t, &stats, &coll).map(|f| (t.to_owned(), classifier.is_informative(&f)))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(TermClassMap { labels })
}

/// Applies the classifier to the vocabulary and collects the non-informative frequencies.
pub fn extract_noninformative_sample(
    index: &InvertedIndex,
    classifier: &LinearTermClassifier,
) -> Result<(FrequencySample, TermClassMap)> {
    let map = classify_vocabulary(index, classifier, Exec::default())?;
    let sample = map.noninformative_sample(index)?;
    Ok((sample, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::Document;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ex(term: &str, gain: f64, idf: f64, ridf: f64, informative: bool) -> Example {
        Example {
            term: term.into(),
            features: TermFeatures { gain, idf, ridf },
            informative,
        }
    }

    #[test]
    fn builtin_seed_list() {
        let s = SeedTerms::builtin();
        assert_eq!(s.informative.len(), 40);
        assert_eq!(s.non_informative.len(), 40);
        assert_eq!(s.informative[0], "hypothermia");
        assert_eq!(s.non_informative.last().unwrap(), "considerable");
        let a: BTreeSet<_> = s.informative.iter().collect();
        assert!(s.non_informative.iter().all(|t| !a.contains(t)));
        assert_eq!(SeedTerms::parse(s.to_text().as_bytes()).unwrap(), s);
    }

    #[test]
    fn seed_parse_errors() {
        assert!(SeedTerms::parse("a info\na noninfo\n".as_bytes()).is_err());
        assert!(SeedTerms::parse("a maybe\n".as_bytes()).is_err());
    }

    #[test]
    fn separable_examples_reach_full_accuracy() {
        let examples: Vec<Example> = (0..30)
            .map(|i| {
                let informative = i % 2 == 0;
                let shift = if informative { 3.0 } else { -3.0 };
                ex(&format!("t{i:02}"), shift + (i as f64 * 0.1).sin(), shift * 0.5, -shift, informative)
            })
            .collect();
        for subset in feature_subsets(&FeatureKind::ALL) {
            let (_, acc) = train_on_examples(&examples, &subset, 10).unwrap();
            assert_eq!(acc, 1.0, "{subset:?}");
        }
    }

    #[test]
    fn random_labels_are_near_chance() {
        let mut accs = Vec::new();
        for seed in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let examples: Vec<Example> = (0..80)
                .map(|i| ex(&format!("w{i:03}"), 0.2, 5.0, 1.0, rng.random::<bool>()))
                .collect();
            if examples.iter().filter(|e| e.informative).count() < 2 {
                continue;
            }
            let (_, acc) = train_on_examples(&examples, &[FeatureKind::Idf], 10).unwrap();
            accs.push(acc);
        }
        let mean = accs.iter().sum::<f64>() / accs.len() as f64;
        assert!((mean - 0.5).abs() <= 0.15, "{mean}");
    }

    #[test]
    fn subset_search_picks_informative_singleton() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let examples: Vec<Example> = (0..60)
            .map(|i| {
                let informative = i % 2 == 1;
                let signal = if informative { 2.0 } else { -2.0 } + rng.random::<f64>() * 0.5;
                ex(&format!("t{i:02}"), rng.random::<f64>() * 4.0, rng.random::<f64>() * 4.0, signal, informative)
            })
            .collect();
        let search = select_subset_on_examples(&examples, 10, Exec::Sequential).unwrap();
        assert_eq!(search.evaluated.len(), 7);
        assert_eq!(search.features, vec![FeatureKind::Ridf]);
        assert_eq!(search.cv_accuracy, 1.0);
        for (_, acc) in &search.evaluated {
            assert!(search.cv_accuracy >= *acc);
        }
        let par = select_subset_on_examples(&examples, 10, Exec::Parallel).unwrap();
        assert_eq!(par.evaluated, search.evaluated);
    }

    #[test]
    fn identical_features_tie_break_to_gain() {
        let examples: Vec<Example> = (0..20)
            .map(|i| {
                let v = if i % 2 == 0 { 1.0 } else { -1.0 };
                ex(&format!("t{i:02}"), v, v, v, i % 2 == 0)
            })
            .collect();
        let search = select_subset_on_examples(&examples, 5, Exec::Sequential).unwrap();
        assert_eq!(search.features, vec![FeatureKind::Gain]);
    }

    #[test]
    fn subset_enumeration_order() {
        let s = feature_subsets(&FeatureKind::ALL);
        assert_eq!(s.len(), 7);
        assert_eq!(s[0], vec![FeatureKind::Gain]);
        assert_eq!(s[3], vec![FeatureKind::Gain, FeatureKind::Idf]);
        assert_eq!(s[6], FeatureKind::ALL.to_vec());
    }

    #[test]
    fn training_preconditions() {
        let one_class: Vec<Example> = (0..10).map(|i| ex(&format!("t{i}"), 0.0, 1.0, 0.0, true)).collect();
        assert!(matches!(
            train_on_examples(&one_class, &[FeatureKind::Idf], 5),
            Err(Error::Training(_))
        ));
        assert!(train_on_examples(&one_class, &[FeatureKind::Idf], 1).is_err());
    }

    fn toy_index() -> InvertedIndex {
        // "zap" bursts in d0; "the" spreads evenly; "jar" and "fork" are seed non-informative terms.
        let docs = [
            "zap zap zap zap zap zap the jar",
            "the fork jar",
            "the fork",
            "the jar fork",
        ];
        InvertedIndex::build(docs.iter().enumerate().map(|(i, t)| Document::new(format!("d{i}"), *t))).unwrap()
    }

    #[test]
    fn degenerate_classifiers() {
        let index = toy_index();
        let all_non = LinearTermClassifier {
            features: vec![FeatureKind::Idf],
            weights: vec![0.0],
            bias: 0.0,
            means: vec![0.0],
            stds: vec![1.0],
            lambda: 1.0,
        };
        let (sample, map) = extract_noninformative_sample(&index, &all_non).unwrap();
        let mut cfs: Vec<u64> = index.terms().map(|(_, e)| e.stats.cf).collect();
        cfs.sort();
        assert_eq!(sample.values().collect::<Vec<_>>(), cfs);
        assert_eq!(map.informative_count() + sample.len() as usize, index.vocabulary_size());

        let all_info = LinearTermClassifier { bias: 1.0, ..all_non };
        assert!(matches!(
            extract_noninformative_sample(&index, &all_info),
            Err(Error::EmptySample)
        ));
    }

    #[test]
    fn absent_seed_terms_are_reported() {
        let index = toy_index();
        let seeds = SeedTerms {
            informative: vec!["zap".into(), "nothere".into()],
            non_informative: vec!["the".into(), "jar".into()],
        };
        let (examples, absent) = seed_examples(&seeds, &index).unwrap();
        assert_eq!(examples.len(), 3);
        assert_eq!(absent, vec!["nothere".to_string()]);
        let seeds = SeedTerms {
            informative: vec!["nothere".into()],
            non_informative: vec!["the".into()],
        };
        assert!(matches!(seed_examples(&seeds, &index), Err(Error::Training(_))));
    }

    #[test]
    fn classifier_text_round_trip() {
        let clf = LinearTermClassifier {
            features: vec![FeatureKind::Gain, FeatureKind::Ridf],
            weights: vec![0.5, -1.25],
            bias: 0.125,
            means: vec![0.1, 2.0],
            stds: vec![1.0, 0.3],
            lambda: 0.1,
        };
        assert_eq!(LinearTermClassifier::parse(&clf.to_text()).unwrap(), clf);
    }

    #[test]
    fn class_map_round_trip() {
        let map = TermClassMap {
            labels: vec![("alpha".into(), true), ("beta".into(), false)],
        };
        assert_eq!(TermClassMap::parse(map.to_text().as_bytes()).unwrap(), map);
    }
}
