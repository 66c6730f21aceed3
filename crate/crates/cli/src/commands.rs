use crate::{AfterEffectArg, Command, InductionArg, ModelArg, ObjectiveArg, RankArgs};
use adr::distfit::{fit_all, fits_to_text, parse_fits, Distribution, Family, FittedModel};
use adr::eval::{
    evaluate, paired_t_test, parse_topics, per_query_diff, tune, Metric, Qrels, Run, C_GRID, MU_GRID,
};
use adr::index::{load_index, read_corpus, save_index, InvertedIndex};
use adr::ranking::{format_run, search_batch, AfterEffect, Induction, Model, Query, RankingConfig};
use adr::sample::FrequencySample;
use adr::select::{parse_winner, select_best};
use adr::synth::{generate, SynthConfig};
use adr::termclass::{
    classify_vocabulary, select_feature_subset, train_classifier, FeatureKind, SeedTerms, TermClassMap, Training,
};
use adr::Exec;
use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;
use std::fmt::Write as _;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Index { corpus, out } => {
            let index = index(&corpus, &out)?;
            println!("indexed {} documents, {} terms into {}", index.num_docs(), index.vocabulary_size(), out.display());
        }
        Command::Classify {
            index,
            seeds,
            out,
            classifier,
            report,
            folds,
            features,
        } => {
            let classifier = classifier.unwrap_or_else(|| sibling(&out, "classifier.txt"));
            let report = report.unwrap_or_else(|| sibling(&out, "cv_report.txt"));
            let (t, map) = classify(&index, seeds.as_deref(), &out, &classifier, &report, folds, features)?;
            println!(
                "features {} cv_accuracy {:.4}; {} of {} terms informative",
                feature_names(&t.classifier.features),
                t.cv_accuracy,
                map.informative_count(),
                map.labels.len()
            );
        }
        Command::Fit {
            index,
            classmap,
            out,
            sample,
        } => {
            let (s, fits) = fit(&index, &classmap, &out, &sample)?;
            println!("fitted {} families to {} non-informative frequencies", fits.len(), s.len());
        }
        Command::Select {
            fits,
            sample,
            out,
            summary,
        } => {
            let (winner, text) = select(&fits, &sample, &out)?;
            match summary {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            println!("selected {winner}");
        }
        Command::Search {
            index,
            topics,
            run,
            rank,
            k,
        } => {
            let (cfg, lines, nq) = search(&index, &topics, &run, &rank, k)?;
            println!("{}: wrote {lines} run lines for {nq} queries to {}", cfg.label(), run.display());
        }
        Command::Evaluate { run, qrels, out } => {
            let (text, summary) = evaluate_cmd(&run, &qrels)?;
            match out {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            println!("{summary}");
        }
        Command::Tune {
            index,
            topics,
            qrels,
            rank,
            grid,
            folds,
            objective,
            k,
            out,
        } => {
            let idx = open_index(&index)?;
            let queries = read_topics(&topics)?;
            let qrels = read_qrels(&qrels)?;
            let cfg = ranking_config(&rank)?;
            let grid = grid.unwrap_or_else(|| {
                if cfg.model == Model::LMDir {
                    MU_GRID.to_vec()
                } else {
                    C_GRID.to_vec()
                }
            });
            let r = tune(&queries, &qrels, &idx, &cfg, &grid, folds, metric(objective), k, Exec::default())?;
            let text = r.to_text();
            match out {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            let picks: Vec<String> = r.folds.iter().map(|f| f.chosen.to_string()).collect();
            println!("{} picks {} = [{}], mean test {} {:.4}", cfg.model, r.parameter, picks.join(","), r.objective, r.mean_test);
        }
        Command::Fitplot { sample, fits, out } => {
            let rows = fitplot(&sample, &fits, &out)?;
            println!("wrote {rows} rows to {}", out.display());
        }
        Command::Diff {
            run_a,
            run_b,
            qrels,
            metric: m,
            alpha,
            out,
        } => {
            let (text, summary) = diff(&run_a, &run_b, &qrels, metric(m), alpha)?;
            match out {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            println!("{summary}");
        }
        Command::Synth {
            out_dir,
            seed,
            docs,
            uniform_terms,
            bursty_terms,
            queries,
            rho,
        } => {
            let cfg = SynthConfig {
                num_docs: docs,
                uniform_terms,
                bursty_terms,
                num_queries: queries,
                rho,
                seed,
            };
            synth(&cfg, &out_dir)?;
            println!("wrote a {docs}-document fixture to {}", out_dir.display());
        }
        Command::Pipeline {
            corpus,
            topics,
            qrels,
            seeds,
            work_dir,
            rank,
            k,
            seed,
        } => {
            let summary = pipeline(&corpus, &topics, qrels.as_deref(), seeds.as_deref(), &work_dir, &rank, k, seed)?;
            println!("{summary}");
        }
    }
    Ok(())
}

fn sibling(path: &Path, name: &str) -> PathBuf {
    path.parent().unwrap_or(Path::new("")).join(name)
}

fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

/// Fails when `path` is absent; `producer` names the command that writes it.
fn require(path: &Path, what: &str, producer: Option<&str>) -> Result<()> {
    if path.exists() {
        return Ok(());
    }
    match producer {
        Some(cmd) => bail!("missing {what} {} (produce it with `adr {cmd}`)", path.display()),
        None => bail!("missing {what} {}", path.display()),
    }
}

fn read(path: &Path, what: &str, producer: Option<&str>) -> Result<String> {
    require(path, what, producer)?;
    fs::read_to_string(path).with_context(|| format!("cannot read {what} {}", path.display()))
}

fn open_index(path: &Path) -> Result<InvertedIndex> {
    require(path, "index", Some("index"))?;
    load_index(path).with_context(|| format!("cannot load index {}", path.display()))
}

fn read_topics(path: &Path) -> Result<Vec<Query>> {
    let text = read(path, "topics file", Some("synth"))?;
    parse_topics(text.as_bytes()).with_context(|| format!("bad topics file {}", path.display()))
}

fn read_qrels(path: &Path) -> Result<Qrels> {
    let text = read(path, "qrels file", Some("synth"))?;
    let (qrels, warnings) = Qrels::parse(text.as_bytes()).with_context(|| format!("bad qrels {}", path.display()))?;
    for w in warnings {
        eprintln!("adr: warning: {}: {w}", path.display());
    }
    Ok(qrels)
}

fn read_run(path: &Path) -> Result<Run> {
    let text = read(path, "run", Some("search"))?;
    Run::parse(text.as_bytes()).with_context(|| format!("bad run {}", path.display()))
}

fn read_sample(path: &Path) -> Result<FrequencySample> {
    let text = read(path, "frequency sample", Some("fit"))?;
    FrequencySample::parse(text.as_bytes()).with_context(|| format!("bad frequency sample {}", path.display()))
}

fn read_fits(path: &Path) -> Result<Vec<FittedModel>> {
    let text = read(path, "fitted models", Some("fit"))?;
    parse_fits(&text).with_context(|| format!("bad fitted models {}", path.display()))
}

fn feature_names(f: &[FeatureKind]) -> String {
    f.iter().map(|k| k.name()).collect::<Vec<_>>().join(",")
}

fn metric(o: ObjectiveArg) -> Metric {
    match o {
        ObjectiveArg::Ndcg => Metric::Ndcg,
        ObjectiveArg::P10 => Metric::P10,
        ObjectiveArg::Err20 => Metric::Err20,
        ObjectiveArg::Ndcg10 => Metric::Ndcg10,
        ObjectiveArg::Bpref => Metric::Bpref,
    }
}

fn index(corpus: &Path, out: &Path) -> Result<InvertedIndex> {
    require(corpus, "corpus", None)?;
    let file = fs::File::open(corpus).with_context(|| format!("cannot open {}", corpus.display()))?;
    let docs = read_corpus(BufReader::new(file)).with_context(|| format!("bad corpus {}", corpus.display()))?;
    let index = InvertedIndex::build(docs)?;
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    save_index(&index, out).with_context(|| format!("cannot write index {}", out.display()))?;
    Ok(index)
}

fn classify(
    index_path: &Path,
    seeds: Option<&Path>,
    out: &Path,
    classifier_path: &Path,
    report_path: &Path,
    folds: usize,
    features: Option<Vec<String>>,
) -> Result<(Training, TermClassMap)> {
    let index = open_index(index_path)?;
    let seeds = match seeds {
        Some(p) => SeedTerms::parse(read(p, "seed list", None)?.as_bytes())?,
        None => SeedTerms::builtin(),
    };
    let training = match features {
        Some(names) => {
            let kinds = names
                .iter()
                .map(|n| n.trim().parse::<FeatureKind>())
                .collect::<adr::Result<Vec<_>>>()?;
            train_classifier(&seeds, &index, &kinds, folds)?
        }
        None => select_feature_subset(&seeds, &index, folds)?,
    };
    let map = classify_vocabulary(&index, &training.classifier, Exec::default())?;

    let mut report = String::new();
    let _ = writeln!(report, "features {}", feature_names(&training.classifier.features));
    let _ = writeln!(report, "cv_accuracy {}", training.cv_accuracy);
    let _ = writeln!(report, "lambda {}", training.classifier.lambda);
    let _ = writeln!(report, "folds {folds}");
    let _ = writeln!(
        report,
        "seeds {} absent {}",
        seeds.informative.len() + seeds.non_informative.len(),
        training.absent_seeds.len()
    );
    for t in &training.absent_seeds {
        let _ = writeln!(report, "absent_seed {t}");
    }
    for (subset, acc) in &training.evaluated {
        let _ = writeln!(report, "subset {} {acc}", feature_names(subset));
    }
    let _ = writeln!(report, "informative_terms {}", map.informative_count());
    let _ = writeln!(report, "noninformative_terms {}", map.labels.len() - map.informative_count());

    write(out, &map.to_text())?;
    write(classifier_path, &training.classifier.to_text())?;
    write(report_path, &report)?;
    Ok((training, map))
}

fn fit(index_path: &Path, classmap: &Path, out: &Path, sample_path: &Path) -> Result<(FrequencySample, Vec<FittedModel>)> {
    let index = open_index(index_path)?;
    let text = read(classmap, "term-class map", Some("classify"))?;
    let map = TermClassMap::parse(text.as_bytes()).with_context(|| format!("bad term-class map {}", classmap.display()))?;
    let sample = map.noninformative_sample(&index)?;
    let mut families = Family::DISCRETE.to_vec();
    families.push(Family::LogLogistic);
    let fits = fit_all(&families, &sample, Exec::default())?;
    write(sample_path, &sample.to_text())?;
    write(out, &fits_to_text(&fits))?;
    Ok((sample, fits))
}

fn select(fits_path: &Path, sample_path: &Path, out: &Path) -> Result<(Family, String)> {
    let fits: Vec<FittedModel> = read_fits(fits_path)?
        .into_iter()
        .filter(|f| f.family().is_discrete())
        .collect();
    let sample = read_sample(sample_path)?;
    let report = select_best(&fits, &sample)?;
    write(out, &report.to_kv())?;
    Ok((report.winner, report.render()))
}

fn model_of(m: ModelArg) -> Model {
    match m {
        ModelArg::Pl2 => Model::PL2,
        ModelArg::Inl2 => Model::InL2,
        ModelArg::Lll2 => Model::LLL2,
        ModelArg::Spll2 => Model::SPLL2,
        ModelArg::Ysl2 => Model::YSL2,
        ModelArg::Lmdir => Model::LMDir,
    }
}

fn selected_family(rank: &RankArgs) -> Result<Option<Family>> {
    match &rank.selection {
        Some(p) => {
            let text = read(p, "selection report", Some("select"))?;
            Ok(Some(parse_winner(&text)?))
        }
        None => Ok(None),
    }
}

/// Resolves the ranking model: an explicit `--model`, or the one matching the selected family.
fn ranking_config(rank: &RankArgs) -> Result<RankingConfig> {
    let model = match rank.model.map(model_of) {
        Some(Model::YSL2) if !rank.force_model => match selected_family(rank)? {
            Some(Family::YuleSimon) => Model::YSL2,
            Some(other) => bail!("selection report names {other}, not yule_simon; pass --force-model to rank with YSL2 anyway"),
            None => bail!("YSL2 needs a selection report naming yule_simon (produce it with `adr select`, pass --selection) or --force-model"),
        },
        Some(m) => m,
        None => {
            let Some(family) = selected_family(rank)? else {
                bail!("no --model given and no --selection report (produce it with `adr select`)");
            };
            Model::for_family(family)
                .ok_or_else(|| anyhow!("selected family {family} has no ranking model; pass --model"))?
        }
    };
    let mut cfg = RankingConfig::new(model)
        .with_c(rank.c)
        .with_mu(rank.mu)
        .with_after_effect(match rank.after_effect {
            AfterEffectArg::Laplace => AfterEffect::Laplace,
            AfterEffectArg::Bernoulli => AfterEffect::Bernoulli,
        })
        .with_induction(match rank.induction {
            InductionArg::Tc => Induction::Tc,
            InductionArg::Dc => Induction::Dc,
        });
    cfg.laplace_raw_tf = rank.laplace_raw_tf;
    cfg.info_after_effect = !rank.no_info_after_effect;
    cfg.rho_plus_one = rank.rho_plus_one;
    cfg.validate()?;
    Ok(cfg)
}

fn search(index_path: &Path, topics: &Path, run: &Path, rank: &RankArgs, k: usize) -> Result<(RankingConfig, usize, usize)> {
    let cfg = ranking_config(rank)?;
    let index = open_index(index_path)?;
    let queries = read_topics(topics)?;
    let results = search_batch(&queries, &index, &cfg, k, Exec::default())?;
    let lines = results.iter().map(|(_, r)| r.len()).sum();
    write(run, &format_run(&results, &cfg.label()))?;
    Ok((cfg, lines, queries.len()))
}

fn evaluate_cmd(run: &Path, qrels: &Path) -> Result<(String, String)> {
    let run = read_run(run)?;
    let qrels = read_qrels(qrels)?;
    let report = evaluate(&run, &qrels)?;
    let means: Vec<String> = Metric::ALL.iter().map(|&m| format!("{m} {:.4}", report.mean(m))).collect();
    let summary = format!("{} queries ({} excluded): {}", report.per_query.len(), report.excluded.len(), means.join(" "));
    Ok((report.to_text(), summary))
}

fn diff(a: &Path, b: &Path, qrels: &Path, m: Metric, alpha: f64) -> Result<(String, String)> {
    let run_a = read_run(a)?;
    let run_b = read_run(b)?;
    let qrels = read_qrels(qrels)?;
    let d = per_query_diff(&run_a, &run_b, &qrels, m)?;
    let (va, vb): (Vec<f64>, Vec<f64>) = d
        .deltas
        .iter()
        .map(|(q, _)| {
            (
                qrels.metric(m, q, run_a.ranking(q)).unwrap_or(0.0),
                qrels.metric(m, q, run_b.ranking(q)).unwrap_or(0.0),
            )
        })
        .unzip();
    let mut text = d.to_text();
    let t_line = match paired_t_test(&va, &vb, alpha) {
        Ok(t) => format!(
            "# paired_t t {} df {} p {} alpha {alpha} significant {}",
            t.t, t.df, t.p_value, t.significant
        ),
        Err(e) => format!("# paired_t unavailable: {e}"),
    };
    let header_end = text.find('\n').map_or(text.len(), |i| i + 1);
    text.insert_str(header_end, &format!("{t_line}\n"));
    let summary = format!(
        "{m}: A better on {}, B better on {}, tied on {}; {}",
        d.positive,
        d.negative,
        d.zero,
        t_line.trim_start_matches("# ")
    );
    Ok((text, summary))
}

/// Cumulative distribution of the log-logistic.
fn log_logistic_cdf(x: f64, scale: f64, shape: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        1.0 / (1.0 + (x / scale).powf(-shape))
    }
}

/// Probability each fit puts on the integer `x`; the log-logistic is binned over [x − ½, x + ½].
fn plotted_mass(fit: &FittedModel, x: u64) -> Result<f64> {
    match fit.dist {
        Distribution::LogLogistic { scale, shape } => {
            let xf = x as f64;
            Ok(log_logistic_cdf(xf + 0.5, scale, shape) - log_logistic_cdf(xf - 0.5, scale, shape))
        }
        ref d => Ok(d.pmf(x)?),
    }
}

fn fitplot(sample_path: &Path, fits_path: &Path, out: &Path) -> Result<u64> {
    let sample = read_sample(sample_path)?;
    let fits = read_fits(fits_path)?;
    let mut text = String::from("x\tempirical");
    for f in &fits {
        let _ = write!(text, "\t{}", f.family());
    }
    text.push('\n');
    let counts: std::collections::BTreeMap<u64, u64> = sample.histogram().iter().copied().collect();
    let n = sample.len() as f64;
    for x in 1..=sample.max() {
        let emp = counts.get(&x).copied().unwrap_or(0) as f64 / n;
        let _ = write!(text, "{x}\t{emp:.9e}");
        for f in &fits {
            let _ = write!(text, "\t{:.9e}", plotted_mass(f, x)?);
        }
        text.push('\n');
    }
    write(out, &text)?;
    Ok(sample.max())
}

fn synth(cfg: &SynthConfig, dir: &Path) -> Result<()> {
    let f = generate(cfg)?;
    write(&dir.join("corpus.jsonl"), &f.corpus_jsonl())?;
    write(&dir.join("topics.tsv"), &f.topics_text())?;
    write(&dir.join("qrels.txt"), &f.qrels.to_text())?;
    write(&dir.join("seeds.txt"), &f.seeds.to_text())?;
    let mut truth = String::new();
    for t in &f.bursty {
        let _ = writeln!(truth, "{t} info");
    }
    for t in &f.uniform {
        let _ = writeln!(truth, "{t} noninfo");
    }
    write(&dir.join("truth.txt"), &truth)
}

#[allow(clippy::too_many_arguments)]
fn pipeline(
    corpus: &Path,
    topics: &Path,
    qrels: Option<&Path>,
    seeds: Option<&Path>,
    dir: &Path,
    rank: &RankArgs,
    k: usize,
    seed: u64,
) -> Result<String> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let p = |name: &str| dir.join(name);
    index(corpus, &p("index.adr"))?;
    let (training, _) = classify(
        &p("index.adr"),
        seeds,
        &p("classmap.txt"),
        &p("classifier.txt"),
        &p("cv_report.txt"),
        10,
        None,
    )?;
    fit(&p("index.adr"), &p("classmap.txt"), &p("fits.txt"), &p("sample.txt"))?;
    let (winner, summary) = select(&p("fits.txt"), &p("sample.txt"), &p("selection.txt"))?;
    write(&p("selection_summary.txt"), &summary)?;
    fitplot(&p("sample.txt"), &p("fits.txt"), &p("fitplot.tsv"))?;

    let mut rank = rank.clone();
    if rank.selection.is_none() {
        rank.selection = Some(p("selection.txt"));
    }
    let (cfg, lines, _) = search(&p("index.adr"), topics, &p("run.trec"), &rank, k)?;
    let metrics = match qrels {
        Some(q) => {
            let (text, summary) = evaluate_cmd(&p("run.trec"), q)?;
            write(&p("metrics.txt"), &text)?;
            Some(summary)
        }
        None => None,
    };
    let fitted = read_fits(&p("fits.txt"))?
        .into_iter()
        .find(|f| f.family() == winner)
        .map(|f| f.dist.params().into_iter().map(|(n, v)| (n.to_owned(), json!(v))).collect::<serde_json::Map<_, _>>())
        .unwrap_or_default();
    let manifest = json!({
        "seed": seed,
        "index": "index.adr",
        "classifier": "classifier.txt",
        "cv_report": "cv_report.txt",
        "term_class_map": "classmap.txt",
        "frequency_sample": "sample.txt",
        "fits": "fits.txt",
        "selection_report": "selection.txt",
        "fitplot": "fitplot.tsv",
        "run": "run.trec",
        "metrics": if metrics.is_some() { json!("metrics.txt") } else { json!(null) },
        "classifier_features": feature_names(&training.classifier.features),
        "cv_accuracy": training.cv_accuracy,
        "selected_family": winner.name(),
        "fitted_parameters": fitted,
        "ranking": {
            "model": cfg.model.name(),
            "after_effect": cfg.after_effect.name(),
            "induction": cfg.induction.name(),
            "c": cfg.c,
            "mu": cfg.mu,
            "laplace_raw_tf": cfg.laplace_raw_tf,
            "info_after_effect": cfg.info_after_effect,
            "rho_plus_one": cfg.rho_plus_one,
            "k": k,
        },
    });
    write(&p("manifest.json"), &(serde_json::to_string_pretty(&manifest)? + "\n"))?;
    let mut summary = format!("selected {winner}; ranked with {} ({lines} run lines)", cfg.label());
    if let Some(m) = metrics {
        summary.push_str("; ");
        summary.push_str(&m);
    }
    Ok(summary)
}
