use std::collections::BTreeSet;
use std::path::Path;

use proptest::prelude::*;
use techkb_core::dictionary::normalize_name;
use techkb_core::eval::{stratified_sample, stratum_draw, top_relations, wilson_interval, JudgmentSheet};
use techkb_core::store::{decode_iri, encode_iri, parse_ntriples};
use techkb_core::{Extractor, Provenance, Triple, TripleKey, TripleStore};

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec![
        "Heap",
        "B-tree",
        "C++",
        "Red–black_tree",
        "Dijkstra's_algorithm",
        "RSA_(cryptosystem)",
        "naïve",
        "x y",
        "%41",
        "a<b>",
        "Zeta",
    ])
    .prop_map(String::from)
}

fn relation() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["typeOf", "subTopicOf", "methodOf", "conceptOf", "synonymOf"]).prop_map(String::from)
}

fn extractor() -> impl Strategy<Value = Extractor> {
    prop::sample::select(Extractor::ALL.to_vec())
}

fn triples() -> impl Strategy<Value = Vec<Triple>> {
    prop::collection::vec((name(), relation(), name(), extractor(), 0..3u8), 0..60).prop_map(|raw| {
        raw.into_iter()
            .filter(|(s, _, o, _, _)| s != o)
            .map(|(s, r, o, e, d)| Triple::new(s, r, o, Provenance::new(e, format!("doc{d}"), "loc")).unwrap())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn iri_round_trip(key in "\\PC{0,12}") {
        let encoded = encode_iri(&key);
        prop_assert!(encoded.bytes().all(|b| b.is_ascii_graphic() && b != b'<' && b != b'>'));
        prop_assert_eq!(decode_iri(&encoded), Some(key));
    }

    #[test]
    fn ntriples_round_trip(ts in triples()) {
        let store: TripleStore = ts.into_iter().collect();
        let text = store.to_ntriples();
        let parsed = parse_ntriples(&text, Path::new("p.nt")).unwrap();
        prop_assert_eq!(parsed.key_set(), store.key_set());
        prop_assert_eq!(parsed.to_ntriples(), text);
    }

    #[test]
    fn indexes_agree_with_scan(ts in triples(), s in name(), r in relation()) {
        let store: TripleStore = ts.iter().cloned().collect();
        let mut scan: Vec<String> = ts
            .iter()
            .filter(|t| t.subject == s && t.relation == r)
            .map(|t| t.object.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        scan.sort();
        prop_assert_eq!(store.objects_of(&s, &r), scan);
        let by_rel: BTreeSet<&TripleKey> = store.by_relation(&r).collect();
        let scanned: BTreeSet<&TripleKey> = store.keys().filter(|k| k.1 == r).collect();
        prop_assert_eq!(by_rel, scanned);
        prop_assert!(store.by_subject(&s).all(|k| k.0 == s));
    }

    #[test]
    fn insert_is_idempotent(ts in triples()) {
        let once: TripleStore = ts.iter().cloned().collect();
        let twice: TripleStore = ts.iter().chain(ts.iter()).cloned().collect();
        prop_assert_eq!(once.to_ntriples(), twice.to_ntriples());
        prop_assert_eq!(once.len(), ts.iter().map(Triple::key).collect::<BTreeSet<_>>().len());
    }

    #[test]
    fn sample_respects_strata(ts in triples(), top_k in 1..4usize, fraction in 0.01..1.0f64, seed in any::<u64>()) {
        let store: TripleStore = ts.into_iter().collect();
        prop_assume!(!store.is_empty());
        let sheet = stratified_sample(&store, top_k, fraction, seed).unwrap();
        let top: BTreeSet<String> = top_relations(&store, top_k).into_iter().collect();
        let rows: BTreeSet<TripleKey> = sheet
            .rows
            .iter()
            .map(|r| (r.subject.clone(), r.relation.clone(), r.object.clone()))
            .collect();
        prop_assert_eq!(rows.len(), sheet.rows.len());
        for k in &rows {
            prop_assert!(store.contains(&k.0, &k.1, &k.2));
            prop_assert!(top.contains(&k.1));
        }
        for rel in &top {
            for e in Extractor::ALL {
                let size = store.by_relation(rel).filter(|k| store.primary_source(k) == Some(e)).count();
                let drawn = sheet.rows.iter().filter(|r| &r.relation == rel && r.source == e.id()).count();
                let want = if size == 0 { 0 } else { stratum_draw(fraction, size) };
                prop_assert_eq!(drawn, want);
            }
        }
        let reparsed = JudgmentSheet::parse(&sheet.to_csv(), Path::new("s.csv")).unwrap();
        prop_assert_eq!(reparsed, sheet);
    }

    #[test]
    fn wilson_brackets_estimate(total in 1..5000usize, frac in 0.0..=1.0f64, confidence in 0.01..0.999f64) {
        let correct = ((total as f64) * frac).round() as usize;
        let (lo, hi) = wilson_interval(correct, total, confidence).unwrap();
        let p = correct as f64 / total as f64;
        prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0, "{lo} {p} {hi}");
    }

    #[test]
    fn normalize_is_idempotent(raw in "[ a-zA-Z0-9_+#().,'-]{0,20}") {
        if let Ok(key) = normalize_name(&raw) {
            prop_assert_eq!(normalize_name(&key).unwrap(), key.clone());
            prop_assert!(!key.contains(' '));
        }
    }
}

#[test]
fn stratum_draw_bounds() {
    assert_eq!(stratum_draw(0.02, 1), 1);
    assert_eq!(stratum_draw(0.02, 100), 2);
    assert_eq!(stratum_draw(0.02, 101), 3);
    assert_eq!(stratum_draw(1.0, 7), 7);
    assert_eq!(stratum_draw(0.1, 30), 3);
}
