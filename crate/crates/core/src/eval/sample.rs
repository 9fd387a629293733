use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::sheet::{JudgmentSheet, Label, SheetRow};
use crate::error::{Error, Result};
use crate::store::TripleStore;
use crate::triple::TripleKey;

const UNKNOWN: &str = "unknown";

/// The `top_k` most frequent relations, ties broken by id.
pub fn top_relations(store: &TripleStore, top_k: usize) -> Vec<String> {
    let mut counts: Vec<(String, usize)> = store
        .relations()
        .map(|r| (r.to_string(), store.by_relation(r).count()))
        .collect();
    counts.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    counts.into_iter().take(top_k).map(|(r, _)| r).collect()
}

/// Draw size for a stratum: `ceil(fraction * size)`, tolerant of float noise
/// so that e.g. 0.02 * 50 draws 1, and never zero for a nonempty stratum.
pub fn stratum_draw(fraction: f64, size: usize) -> usize {
    let exact = fraction * size as f64;
    ((exact - 1e-9).ceil() as usize).clamp(1.min(size), size)
}

/// Proportional stratified sample over the `top_k` most frequent
/// relations, stratified by primary extractor within each relation.
/// Rows come out grouped by relation (frequency order), then source, then
/// triple. The same inputs always give the same sheet.
pub fn stratified_sample(store: &TripleStore, top_k: usize, fraction: f64, seed: u64) -> Result<JudgmentSheet> {
    if store.is_empty() {
        return Err(Error::EmptyStore);
    }
    if top_k == 0 {
        return Err(Error::InvalidArgument("top_k must be at least 1".into()));
    }
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!("fraction {fraction} outside (0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for relation in top_relations(store, top_k) {
        let mut strata: BTreeMap<String, Vec<&TripleKey>> = BTreeMap::new();
        for key in store.by_relation(&relation) {
            let source = store.primary_source(key).map_or(UNKNOWN, |e| e.id());
            strata.entry(source.to_string()).or_default().push(key);
        }
        for (source, keys) in strata {
            let take = stratum_draw(fraction, keys.len());
            let mut picked = rand::seq::index::sample(&mut rng, keys.len(), take).into_vec();
            picked.sort_unstable();
            for i in picked {
                rows.push(row(store, keys[i], &source));
            }
        }
    }
    Ok(JudgmentSheet { rows })
}

fn row(store: &TripleStore, key: &TripleKey, source: &str) -> SheetRow {
    let hint = store
        .provenance(key)
        .and_then(|provs| provs.iter().next())
        .map(|p| format!("{}#{}", p.document, p.location))
        .unwrap_or_default();
    SheetRow {
        subject: key.0.clone(),
        relation: key.1.clone(),
        object: key.2.clone(),
        source: source.to_string(),
        provenance_hint: hint,
        judge1: Label::Blank,
        judge2: Label::Blank,
    }
}
