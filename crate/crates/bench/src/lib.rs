//! Shared inputs for the benchmarks.

use std::path::{Path, PathBuf};

use techkb_core::classify::{expansion_relations, Example};
use techkb_core::classify::{featurize_bow_tkb, load_posts, DEFAULT_EXPANSION};
use techkb_core::corpus::{load_corpus, WikiDocument};
use techkb_core::{build_matcher, Dictionary, Matcher, TripleStore};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn corpus() -> Vec<WikiDocument> {
    load_corpus(&fixtures().join("corpus")).expect("fixture corpus")
}

pub fn golden_store() -> TripleStore {
    let run = fixtures().join("golden/run");
    TripleStore::load(&run.join("kb.nt"), Some(&run.join("kb.provenance.jsonl"))).expect("golden kb")
}

/// Matcher, store and knowledge-expanded examples of the synthetic
/// classification fixture.
pub fn classify_inputs() -> (Matcher, TripleStore, Vec<Example>) {
    let dir = fixtures().join("classify");
    let dict = Dictionary::load(&dir.join("dictionary.jsonl")).expect("dictionary");
    let matcher = build_matcher(&dict).expect("matcher");
    let store = TripleStore::load(&dir.join("kb.nt"), None).expect("kb");
    let relations = expansion_relations(&store, &DEFAULT_EXPANSION);
    let examples = load_posts(&dir.join("posts.jsonl"))
        .expect("posts")
        .iter()
        .map(|p| (featurize_bow_tkb(p, &matcher, &store, &relations), p.label.clone()))
        .collect();
    (matcher, store, examples)
}
