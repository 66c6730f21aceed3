use adr::index::{CollectionStats, TermStats};
use adr::ranking::{after_effect, info_content, AfterEffect, Model};

const COLL: CollectionStats = CollectionStats {
    num_docs: 1000,
    total_tokens: 200_000,
    avg_len: 200.0,
};

fn stats(cf: u64, df: u32) -> TermStats {
    TermStats { cf, df }
}

fn tfns() -> Vec<f64> {
    (1..=400).map(|i| i as f64 * 0.05).collect()
}

fn param(model: Model, s: &TermStats) -> f64 {
    let t = s.cf as f64 / COLL.num_docs as f64;
    match model {
        Model::SPLL2 => t.min(0.99),
        _ => t,
    }
}

fn weight(model: Model, ae: Option<AfterEffect>, tfn: f64, s: &TermStats) -> f64 {
    let info = info_content(model, tfn, param(model, s), s, &COLL).unwrap();
    let f_td = tfn.ceil() as u32;
    match ae {
        Some(ae) => info * (1.0 - after_effect(ae, tfn, f_td, s, false)),
        None => info,
    }
}

fn assert_increasing(model: Model, ae: Option<AfterEffect>, s: &TermStats) {
    let mut prev = f64::NEG_INFINITY;
    for tfn in tfns() {
        let w = weight(model, ae, tfn, s);
        assert!(w.is_finite(), "{model} {ae:?} tfn={tfn}");
        assert!(w >= prev - 1e-12, "{model} {ae:?} {s:?} drops at tfn={tfn}: {prev} -> {w}");
        prev = w;
    }
}

#[test]
fn information_content_grows_with_frequency() {
    for model in [Model::PL2, Model::InL2, Model::LLL2, Model::SPLL2, Model::YSL2] {
        for s in [stats(5, 4), stats(50, 30), stats(400, 300)] {
            assert_increasing(model, None, &s);
        }
    }
}

#[test]
fn information_content_falls_with_collection_frequency() {
    for model in [Model::PL2, Model::LLL2, Model::SPLL2, Model::YSL2] {
        for tfn in [1.5, 3.0, 8.0] {
            let rare = info_content(model, tfn, param(model, &stats(5, 5)), &stats(5, 5), &COLL).unwrap();
            let common = info_content(model, tfn, param(model, &stats(500, 5)), &stats(500, 5), &COLL).unwrap();
            assert!(rare > common, "{model} tfn={tfn}");
        }
    }
    let rare = info_content(Model::InL2, 2.0, 1.0, &stats(10, 3), &COLL).unwrap();
    let common = info_content(Model::InL2, 2.0, 1.0, &stats(10, 300), &COLL).unwrap();
    assert!(rare > common);
}

#[test]
fn full_weight_grows_where_the_after_effect_allows() {
    for s in [stats(5, 4), stats(50, 30), stats(400, 300)] {
        for ae in [AfterEffect::Laplace, AfterEffect::Bernoulli] {
            assert_increasing(Model::InL2, Some(ae), &s);
        }
        for model in [Model::LLL2, Model::SPLL2, Model::YSL2, Model::PL2] {
            assert_increasing(model, Some(AfterEffect::Bernoulli), &s);
        }
    }
    // PL2 with Laplace is monotone once the frequency clears λ.
    for s in [stats(50, 30), stats(400, 300)] {
        assert_increasing(Model::PL2, Some(AfterEffect::Laplace), &s);
    }
}

#[test]
fn laplace_weight_saturates_for_small_parameter_models() {
    // info · 1/(t+1) flattens to a bounded value as t grows.
    let s = stats(50, 30);
    for model in [Model::LLL2, Model::SPLL2, Model::YSL2] {
        let w100 = weight(model, Some(AfterEffect::Laplace), 100.0, &s);
        let w1000 = weight(model, Some(AfterEffect::Laplace), 1000.0, &s);
        assert!(w1000 < 2.0 * w100 + 1.0, "{model}: {w100} {w1000}");
    }
}
