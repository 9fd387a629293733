//! Deduplicated, provenance-tagged triple set.

mod ntriples;
mod stats;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use ntriples::{decode_iri, encode_iri, parse_ntriples, ENTITY_NS, RELATION_NS};
pub use stats::{compute_stats, KBStats};

use crate::error::{Error, Result};
use crate::triple::{Extractor, Provenance, Triple, TripleKey};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TripleStore {
    triples: BTreeMap<TripleKey, BTreeSet<Provenance>>,
    by_subject: BTreeMap<String, BTreeSet<TripleKey>>,
    by_relation: BTreeMap<String, BTreeSet<TripleKey>>,
    by_subject_relation: BTreeMap<(String, String), BTreeSet<String>>,
}

/// One sidecar line: a triple and every place it was extracted from.
#[derive(Debug, Serialize, Deserialize)]
struct ProvenanceRecord {
    subject: String,
    relation: String,
    object: String,
    provenance: Vec<Provenance>,
}

impl TripleStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn insert(&mut self, triple: Triple) -> Result<()> {
        triple.validate()?;
        let key = triple.key();
        self.insert_key(key, Some(triple.provenance));
        Ok(())
    }

    /// Inserts all triples, or none if any is malformed.
    pub fn insert_all(&mut self, triples: impl IntoIterator<Item = Triple>) -> Result<()> {
        let triples: Vec<Triple> = triples.into_iter().collect();
        for t in &triples {
            t.validate()?;
        }
        for t in triples {
            let key = t.key();
            self.insert_key(key, Some(t.provenance));
        }
        Ok(())
    }

    fn insert_key(&mut self, key: TripleKey, provenance: Option<Provenance>) {
        let (s, r, o) = &key;
        self.by_subject.entry(s.clone()).or_default().insert(key.clone());
        self.by_relation.entry(r.clone()).or_default().insert(key.clone());
        self.by_subject_relation
            .entry((s.clone(), r.clone()))
            .or_default()
            .insert(o.clone());
        let provs = self.triples.entry(key).or_default();
        provs.extend(provenance);
    }

    pub fn contains(&self, subject: &str, relation: &str, object: &str) -> bool {
        self.triples
            .contains_key(&(subject.to_string(), relation.to_string(), object.to_string()))
    }

    /// Keys in sorted order.
    pub fn keys(&self) -> impl Iterator<Item = &TripleKey> {
        self.triples.keys()
    }

    pub fn key_set(&self) -> BTreeSet<TripleKey> {
        self.triples.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TripleKey, &BTreeSet<Provenance>)> {
        self.triples.iter()
    }

    pub fn provenance(&self, key: &TripleKey) -> Option<&BTreeSet<Provenance>> {
        self.triples.get(key)
    }

    /// The extractor a triple is attributed to: the first in [`Extractor::ALL`]
    /// order among its provenance entries.
    pub fn primary_source(&self, key: &TripleKey) -> Option<Extractor> {
        self.triples.get(key)?.iter().map(|p| p.extractor).min()
    }

    pub fn by_subject(&self, subject: &str) -> impl Iterator<Item = &TripleKey> {
        self.by_subject.get(subject).into_iter().flatten()
    }

    pub fn by_relation(&self, relation: &str) -> impl Iterator<Item = &TripleKey> {
        self.by_relation.get(relation).into_iter().flatten()
    }

    /// Distinct relation ids, sorted.
    pub fn relations(&self) -> impl Iterator<Item = &str> {
        self.by_relation.keys().map(String::as_str)
    }

    /// Sorted objects `o` with `(subject, relation, o)` in the store.
    pub fn objects_of(&self, subject: &str, relation: &str) -> Vec<String> {
        self.by_subject_relation
            .get(&(subject.to_string(), relation.to_string()))
            .map(|objs| objs.iter().cloned().collect())
            .unwrap_or_default()
    }

    pub fn write_ntriples(&self, out: &mut impl Write) -> std::io::Result<()> {
        let mut lines: Vec<String> = self.triples.keys().map(ntriples::line).collect();
        lines.sort();
        for line in lines {
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn to_ntriples(&self) -> String {
        let mut buf = Vec::new();
        self.write_ntriples(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("N-Triples output is UTF-8")
    }

    pub fn save_ntriples(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_ntriples()).map_err(|e| Error::io(path, e))
    }

    /// Provenance sidecar: one JSON record per triple in key order.
    pub fn write_provenance(&self, out: &mut impl Write) -> std::io::Result<()> {
        for ((subject, relation, object), provs) in &self.triples {
            let record = ProvenanceRecord {
                subject: subject.clone(),
                relation: relation.clone(),
                object: object.clone(),
                provenance: provs.iter().cloned().collect(),
            };
            serde_json::to_writer(&mut *out, &record)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn save_provenance(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::new();
        self.write_provenance(&mut buf).map_err(|e| Error::io(path, e))?;
        fs::write(path, buf).map_err(|e| Error::io(path, e))
    }

    /// Reads an N-Triples file and, if given, its provenance sidecar.
    /// Sidecar records for triples absent from the main file are an error.
    pub fn load(kb: &Path, sidecar: Option<&Path>) -> Result<TripleStore> {
        let text = fs::read_to_string(kb).map_err(|e| Error::io(kb, e))?;
        let mut store = parse_ntriples(&text, kb)?;
        if let Some(path) = sidecar {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let record: ProvenanceRecord = serde_json::from_str(line)
                    .map_err(|e| Error::parse(path, i + 1, format!("malformed provenance record: {e}")))?;
                let key = (record.subject, record.relation, record.object);
                let Some(provs) = store.triples.get_mut(&key) else {
                    return Err(Error::parse(path, i + 1, "provenance for a triple not in the store"));
                };
                provs.extend(record.provenance);
            }
        }
        Ok(store)
    }
}

impl FromIterator<Triple> for TripleStore {
    /// Panics on a malformed triple; use [`TripleStore::insert_all`] to
    /// handle that case.
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut store = TripleStore::new();
        store.insert_all(iter).expect("well-formed triples");
        store
    }
}
