//! The entity dictionary: harvesting names from every source, merging
//! near-duplicates and linking synonyms.

mod harvest;
mod normalize;
mod resolve;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use harvest::harvest_entities;
pub use normalize::normalize_name;
pub use resolve::{blocked_pairs_within, normalized_distance, resolve_duplicates, DEFAULT_THRESHOLD};

use crate::error::{Error, Result};
use crate::relations::SYNONYM_OF;
use crate::triple::Triple;

/// Where a dictionary name was observed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    WikiTitle,
    Glossary(String),
    Book(String),
    SynonymExtraction,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::WikiTitle => f.write_str("wiki-title"),
            Source::Glossary(site) => write!(f, "glossary:{site}"),
            Source::Book(id) => write!(f, "book:{id}"),
            Source::SynonymExtraction => f.write_str("synonym-extraction"),
        }
    }
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wiki-title" => Ok(Source::WikiTitle),
            "synonym-extraction" => Ok(Source::SynonymExtraction),
            _ => {
                if let Some(site) = s.strip_prefix("glossary:") {
                    Ok(Source::Glossary(site.to_string()))
                } else if let Some(id) = s.strip_prefix("book:") {
                    Ok(Source::Book(id.to_string()))
                } else {
                    Err(Error::InvalidArgument(format!("unknown source tag {s:?}")))
                }
            }
        }
    }
}

impl Serialize for Source {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Source {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A normalized name observed in one source, before duplicate resolution.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Candidate {
    pub key: String,
    pub source: Source,
    pub surfaces: BTreeSet<String>,
}

impl Candidate {
    pub fn new(key: impl Into<String>, source: Source) -> Self {
        Candidate {
            key: key.into(),
            source,
            surfaces: BTreeSet::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    #[serde(rename = "key")]
    pub canonical: String,
    pub surface_forms: BTreeSet<String>,
    pub sources: BTreeSet<Source>,
    pub synonyms: BTreeSet<String>,
}

impl Entity {
    pub fn new(canonical: impl Into<String>) -> Self {
        let canonical = canonical.into();
        Entity {
            surface_forms: BTreeSet::from([canonical.clone()]),
            canonical,
            sources: BTreeSet::new(),
            synonyms: BTreeSet::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dictionary {
    entities: BTreeMap<String, Entity>,
}

impl Dictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&Entity> {
        self.entities.get(key)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entities.contains_key(key)
    }

    /// Entities in canonical-key order.
    pub fn entities(&self) -> impl Iterator<Item = &Entity> {
        self.entities.values()
    }

    /// Inserts or replaces an entity under its canonical key.
    pub fn insert(&mut self, entity: Entity) {
        self.entities.insert(entity.canonical.clone(), entity);
    }

    /// Re-expands the dictionary into candidates, one per (entity, source).
    pub fn candidates(&self) -> Vec<Candidate> {
        self.entities
            .values()
            .flat_map(|e| {
                e.sources.iter().map(move |s| Candidate {
                    key: e.canonical.clone(),
                    source: s.clone(),
                    surfaces: e.surface_forms.clone(),
                })
            })
            .collect()
    }

    /// Installs symmetric synonym links from `synonymOf` triples. Keys not yet
    /// in the dictionary are added with [`Source::SynonymExtraction`].
    pub fn link_synonyms(mut self, triples: &[Triple]) -> Result<Dictionary> {
        for t in triples {
            if t.relation != SYNONYM_OF {
                return Err(Error::NotSynonym(t.relation.clone()));
            }
            t.validate()?;
        }
        for t in triples {
            for (a, b) in [(&t.subject, &t.object), (&t.object, &t.subject)] {
                let entity = self.entities.entry(a.clone()).or_insert_with(|| {
                    let mut e = Entity::new(a.clone());
                    e.sources.insert(Source::SynonymExtraction);
                    e
                });
                entity.synonyms.insert(b.clone());
            }
        }
        Ok(self)
    }

    /// Maps every normalized surface form to the key of the entity owning
    /// it. A form shared by several entities goes to the one whose key it
    /// is, else to the smallest key.
    pub fn alias_map(&self) -> HashMap<String, String> {
        let mut map: HashMap<String, String> = HashMap::new();
        for e in self.entities.values() {
            for alias in e.surface_forms.iter().filter_map(|f| normalize_name(f).ok()) {
                if self.entities.contains_key(&alias) {
                    continue;
                }
                // entities are visited in key order, so the first owner is the smallest
                map.entry(alias).or_insert_with(|| e.canonical.clone());
            }
        }
        for key in self.entities.keys() {
            map.insert(key.clone(), key.clone());
        }
        map
    }

    /// `key` rewritten to its owning entity's canonical key, if any.
    pub fn canonicalize<'a>(aliases: &'a HashMap<String, String>, key: &'a str) -> &'a str {
        aliases.get(key).map_or(key, String::as_str)
    }

    pub fn write_jsonl(&self, mut out: impl Write) -> std::io::Result<()> {
        for e in self.entities.values() {
            serde_json::to_writer(&mut out, e)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).map_err(|e| Error::io(path, e))?;
        fs::write(path, buf).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Dictionary> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut dict = Dictionary::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let entity: Entity = serde_json::from_str(line)
                .map_err(|e| Error::parse(path, i + 1, format!("malformed dictionary record: {e}")))?;
            dict.insert(entity);
        }
        Ok(dict)
    }
}

impl FromIterator<Entity> for Dictionary {
    fn from_iter<I: IntoIterator<Item = Entity>>(iter: I) -> Self {
        let mut dict = Dictionary::new();
        for e in iter {
            dict.insert(e);
        }
        dict
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::{Extractor, Provenance};

    fn syn(a: &str, b: &str) -> Triple {
        Triple::new(a, SYNONYM_OF, b, Provenance::new(Extractor::SurfacePattern, "t", "0")).unwrap()
    }

    fn dict_of(keys: &[&str]) -> Dictionary {
        keys.iter()
            .map(|k| {
                let mut e = Entity::new(*k);
                e.sources.insert(Source::WikiTitle);
                e
            })
            .collect()
    }

    #[test]
    fn synonym_links_are_mutual() {
        let dict = dict_of(&["JPEG", "Joint_Photographic_Experts_Group"])
            .link_synonyms(&[syn("JPEG", "Joint_Photographic_Experts_Group")])
            .unwrap();
        assert!(dict
            .get("JPEG")
            .unwrap()
            .synonyms
            .contains("Joint_Photographic_Experts_Group"));
        assert!(dict
            .get("Joint_Photographic_Experts_Group")
            .unwrap()
            .synonyms
            .contains("JPEG"));
    }

    #[test]
    fn unknown_keys_are_added() {
        let dict = dict_of(&["ALU"])
            .link_synonyms(&[syn("ALU", "Arithmetic_Logic_Unit")])
            .unwrap();
        let added = dict.get("Arithmetic_Logic_Unit").unwrap();
        assert_eq!(added.sources, BTreeSet::from([Source::SynonymExtraction]));
        assert!(added.synonyms.contains("ALU"));
        assert!(dict.get("ALU").unwrap().synonyms.contains("Arithmetic_Logic_Unit"));
    }

    #[test]
    fn empty_triples_is_noop() {
        let dict = dict_of(&["a", "b"]);
        assert_eq!(dict.clone().link_synonyms(&[]).unwrap(), dict);
    }

    #[test]
    fn rejects_other_relations() {
        let t = Triple::new("a", "typeOf", "b", Provenance::new(Extractor::Toc, "d", "")).unwrap();
        assert!(matches!(dict_of(&[]).link_synonyms(&[t]), Err(Error::NotSynonym(_))));
    }

    #[test]
    fn aliases_follow_surface_forms() {
        let mut merged = Entity::new("Heap_sort");
        merged.surface_forms.insert("heap sort".into());
        merged.surface_forms.insert("Colour model".into());
        let mut other = Entity::new("Zeta_model");
        other.surface_forms.insert("heap_sort".into());
        let dict: Dictionary = [merged, other].into_iter().collect();
        let aliases = dict.alias_map();
        assert_eq!(Dictionary::canonicalize(&aliases, "heap_sort"), "Heap_sort");
        assert_eq!(Dictionary::canonicalize(&aliases, "Colour_model"), "Heap_sort");
        assert_eq!(Dictionary::canonicalize(&aliases, "Zeta_model"), "Zeta_model");
        assert_eq!(Dictionary::canonicalize(&aliases, "unknown"), "unknown");
    }

    #[test]
    fn source_tags_round_trip() {
        for s in [
            Source::WikiTitle,
            Source::Glossary("siteA".into()),
            Source::Book("iir".into()),
            Source::SynonymExtraction,
        ] {
            assert_eq!(s.to_string().parse::<Source>().unwrap(), s);
        }
        assert!("web".parse::<Source>().is_err());
    }

    #[test]
    fn jsonl_round_trip_sorted() {
        let dict = dict_of(&["b", "a"]).link_synonyms(&[syn("a", "b")]).unwrap();
        let mut buf = Vec::new();
        dict.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("{\"key\":\"a\""));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.jsonl");
        dict.save(&path).unwrap();
        assert_eq!(Dictionary::load(&path).unwrap(), dict);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn synonym_symmetry(pairs in prop::collection::vec((0u8..8, 0u8..8), 0..20)) {
                let triples: Vec<_> = pairs
                    .iter()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| syn(&format!("k{a}"), &format!("k{b}")))
                    .collect();
                let dict = dict_of(&["k0", "k3"]).link_synonyms(&triples).unwrap();
                for e in dict.entities() {
                    for s in &e.synonyms {
                        prop_assert!(dict.get(s).unwrap().synonyms.contains(&e.canonical));
                    }
                }
            }
        }
    }
}
