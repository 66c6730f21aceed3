use adr::distfit::{fit_all, Family};
use adr::index::InvertedIndex;
use adr::ranking::{search_batch, Model, Query, RankingConfig};
use adr::synth::{generate, SynthConfig};
use adr::termclass::{classify_vocabulary, select_feature_subset};
use adr::Exec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn fixture() -> (InvertedIndex, Vec<Query>) {
    let cfg = SynthConfig {
        num_docs: 2000,
        uniform_terms: 20_000,
        bursty_terms: 3000,
        num_queries: 200,
        ..SynthConfig::default()
    };
    let f = generate(&cfg).expect("fixture");
    let queries = f.topics.iter().map(|(q, t)| Query::parse(q.clone(), t)).collect();
    (InvertedIndex::build(f.docs).expect("index"), queries)
}

fn bench(c: &mut Criterion) {
    let (index, queries) = fixture();
    let training = select_feature_subset(&adr::termclass::SeedTerms::builtin(), &index, 10).expect("classifier");
    let map = classify_vocabulary(&index, &training.classifier, Exec::Sequential).expect("map");
    let sample = map.noninformative_sample(&index).expect("sample");

    let mut g = c.benchmark_group("search_batch");
    for model in [Model::PL2, Model::YSL2, Model::LMDir] {
        let cfg = RankingConfig::new(model);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, model), &exec, |b, &exec| {
                b.iter(|| black_box(search_batch(&queries, &index, &cfg, 1000, exec).unwrap()))
            });
        }
    }
    g.finish();

    let mut g = c.benchmark_group("classify_vocabulary");
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| black_box(classify_vocabulary(&index, &training.classifier, exec).unwrap()))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("fit_all");
    g.sample_size(20);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| black_box(fit_all(&Family::DISCRETE, &sample, exec).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
