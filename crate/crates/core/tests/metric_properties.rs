use adr::eval::{bpref, err_at_k, ndcg, precision_at_k, Judgments, Metric};
use proptest::prelude::*;

fn judged_pool() -> impl Strategy<Value = (Vec<String>, Judgments)> {
    prop::collection::vec(prop::option::of(0u32..=3), 1..40).prop_map(|grades| {
        let docs: Vec<String> = (0..grades.len()).map(|i| format!("d{i}")).collect();
        let mut j = Judgments::new();
        for (d, g) in docs.iter().zip(&grades) {
            if let Some(g) = g {
                j.insert(d.clone(), *g);
            }
        }
        if !j.values().any(|&g| g > 0) {
            j.insert(docs[0].clone(), 2);
        }
        (docs, j)
    })
}

fn ideal(docs: &[String], j: &Judgments) -> Vec<String> {
    let mut out: Vec<String> = docs.to_vec();
    out.sort_by_key(|d| std::cmp::Reverse(j.get(d).copied().unwrap_or(0)));
    out
}

proptest! {
    #[test]
    fn metrics_stay_in_unit_interval((docs, j) in judged_pool(), perm in any::<u64>(), cut in 0usize..40) {
        let mut ranking = docs.clone();
        let n = ranking.len();
        ranking.rotate_left((perm as usize) % n);
        ranking.truncate(cut.min(n));
        let g_max = *j.values().max().unwrap();
        for m in Metric::ALL {
            let v = m.compute(&ranking, &j, g_max).unwrap();
            prop_assert!((0.0..=1.0).contains(&v), "{} = {}", m.name(), v);
        }
    }

    #[test]
    fn ideal_ordering_maximizes_ndcg((docs, j) in judged_pool()) {
        let best = ideal(&docs, &j);
        prop_assert!((ndcg(&best, &j, None).unwrap() - 1.0).abs() < 1e-12);
        prop_assert!((ndcg(&best, &j, Some(10)).unwrap() - 1.0).abs() < 1e-12);
        prop_assert!(ndcg(&docs, &j, None).unwrap() <= 1.0 + 1e-12);
    }

    #[test]
    fn unjudged_documents_do_not_move_bpref((docs, j) in judged_pool(), at in 0usize..40) {
        let base = bpref(&docs, &j).unwrap();
        let mut padded = docs.clone();
        padded.insert(at.min(docs.len()), "unjudged-x".to_string());
        prop_assert_eq!(bpref(&padded, &j).unwrap(), base);
    }

    #[test]
    fn appending_documents_never_lowers_err_or_precision((docs, j) in judged_pool(), split in 0usize..40) {
        let k = split.min(docs.len());
        let g_max = *j.values().max().unwrap();
        let head = &docs[..k];
        prop_assert!(err_at_k(&docs, &j, 20, g_max).unwrap() >= err_at_k(head, &j, 20, g_max).unwrap() - 1e-15);
        prop_assert!(precision_at_k(&docs, &j, 10) >= precision_at_k(head, &j, 10));
    }
}

#[test]
fn queries_without_relevant_documents_are_undefined() {
    let j: Judgments = [("a".to_string(), 0)].into_iter().collect();
    for m in Metric::ALL {
        assert_eq!(m.compute(&["a"], &j, 1), None, "{}", m.name());
    }
}
