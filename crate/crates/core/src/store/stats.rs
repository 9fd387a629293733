use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::TripleStore;
use crate::triple::Extractor;

/// Label for triples loaded without provenance.
pub const UNKNOWN_SOURCE: &str = "unknown";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCount {
    pub relation: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KBStats {
    pub unique_entities: usize,
    pub unique_relations: usize,
    pub most_frequent_relation: Option<RelationCount>,
    pub total_triples: usize,
    /// Each triple counted once, under its primary extractor.
    pub per_source: BTreeMap<String, usize>,
    pub per_relation: BTreeMap<String, usize>,
}

pub fn compute_stats(store: &TripleStore) -> KBStats {
    let mut entities = BTreeSet::new();
    let mut per_relation: BTreeMap<String, usize> = BTreeMap::new();
    let mut per_source: BTreeMap<String, usize> = Extractor::ALL.iter().map(|e| (e.id().to_string(), 0)).collect();
    for key in store.keys() {
        entities.insert(&key.0);
        entities.insert(&key.2);
        *per_relation.entry(key.1.clone()).or_default() += 1;
        let source = store.primary_source(key).map_or(UNKNOWN_SOURCE, Extractor::id);
        *per_source.entry(source.to_string()).or_default() += 1;
    }
    // ties go to the lexicographically smaller id (first in map order)
    let most_frequent_relation = per_relation
        .iter()
        .fold(None::<(&String, usize)>, |best, (r, &c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((r, c)),
        })
        .map(|(r, c)| RelationCount {
            relation: r.clone(),
            count: c,
        });
    KBStats {
        unique_entities: entities.len(),
        unique_relations: per_relation.len(),
        most_frequent_relation,
        total_triples: store.len(),
        per_source,
        per_relation,
    }
}

impl KBStats {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("stats serialize");
        s.push('\n');
        s
    }
}

impl fmt::Display for KBStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "unique entities\t{}", self.unique_entities)?;
        writeln!(f, "unique relations\t{}", self.unique_relations)?;
        match &self.most_frequent_relation {
            Some(m) => writeln!(f, "most frequent relation\t{} with {}", m.relation, m.count)?,
            None => writeln!(f, "most frequent relation\t-")?,
        }
        writeln!(f, "total triples\t{}", self.total_triples)?;
        for (source, n) in &self.per_source {
            writeln!(f, "triples from {source}\t{n}")?;
        }
        Ok(())
    }
}
