//! Known relations: ids, heading keywords and surface patterns.
//!
//! The shipped set lives in `relations.toml`; a user file can extend it or
//! replace individual relations by id.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TYPE_OF: &str = "typeOf";
pub const SUB_TOPIC_OF: &str = "subTopicOf";
pub const SYNONYM_OF: &str = "synonymOf";
pub const TERMINOLOGY_OF: &str = "terminologyOf";

const DEFAULT_RELATIONS: &str = include_str!("relations.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// The entity before the phrase is the subject.
    #[default]
    SubjectFirst,
    ObjectFirst,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternKind {
    /// A literal phrase between two entity mentions.
    Infix(String),
    /// `X (Y)`.
    Parenthetical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSpec {
    pub relation: String,
    pub kind: PatternKind,
    pub direction: Direction,
}

impl PatternSpec {
    pub fn infix(relation: &str, phrase: &str, direction: Direction) -> Self {
        PatternSpec {
            relation: relation.to_string(),
            kind: PatternKind::Infix(phrase.to_string()),
            direction,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSpec {
    pub id: String,
    pub keywords: Vec<String>,
    pub patterns: Vec<PatternSpec>,
}

impl RelationSpec {
    pub fn new(id: &str, keywords: &[&str]) -> Self {
        RelationSpec {
            id: id.to_string(),
            keywords: keywords.iter().map(|k| k.to_string()).collect(),
            patterns: Vec::new(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    relation: Vec<RawRelation>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    id: String,
    #[serde(default)]
    keywords: Vec<String>,
    #[serde(default)]
    patterns: Vec<RawPattern>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPattern {
    phrase: Option<String>,
    kind: Option<String>,
    #[serde(default)]
    direction: Direction,
}

/// An ordered, id-unique set of relation specs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    specs: Vec<RelationSpec>,
}

impl Default for RelationSet {
    fn default() -> Self {
        RelationSet::parse(DEFAULT_RELATIONS).expect("shipped relation file is valid")
    }
}

impl RelationSet {
    pub fn new(specs: Vec<RelationSpec>) -> Result<Self> {
        let set = RelationSet { specs };
        set.validate()?;
        Ok(set)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawFile = toml::from_str(text).map_err(|e| Error::RelationSpec(e.to_string()))?;
        let specs = raw
            .relation
            .into_iter()
            .map(|r| {
                let patterns = r
                    .patterns
                    .into_iter()
                    .map(|p| {
                        let kind = match (p.kind.as_deref(), p.phrase) {
                            (Some("parenthetical"), None) => PatternKind::Parenthetical,
                            (None | Some("infix"), Some(phrase)) => PatternKind::Infix(phrase),
                            (kind, phrase) => {
                                return Err(Error::RelationSpec(format!(
                                    "relation {}: bad pattern (kind {kind:?}, phrase {phrase:?})",
                                    r.id
                                )))
                            }
                        };
                        Ok(PatternSpec {
                            relation: r.id.clone(),
                            kind,
                            direction: p.direction,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(RelationSpec {
                    id: r.id,
                    keywords: r.keywords,
                    patterns,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        RelationSet::new(specs)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        RelationSet::parse(&text)
    }

    /// The shipped set, with `path`'s relations replacing same-id entries and
    /// appending new ones.
    pub fn with_overrides(path: &Path) -> Result<Self> {
        let mut base = RelationSet::default();
        for spec in RelationSet::load(path)?.specs {
            match base.specs.iter_mut().find(|s| s.id == spec.id) {
                Some(slot) => *slot = spec,
                None => base.specs.push(spec),
            }
        }
        base.validate()?;
        Ok(base)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for spec in &self.specs {
            if spec.id.trim().is_empty() {
                return Err(Error::RelationSpec("empty relation id".into()));
            }
            if !seen.insert(spec.id.as_str()) {
                return Err(Error::RelationSpec(format!("duplicate relation id {}", spec.id)));
            }
            if spec.keywords.iter().any(|k| k.trim().is_empty()) {
                return Err(Error::RelationSpec(format!("relation {}: empty keyword", spec.id)));
            }
            for p in &spec.patterns {
                if matches!(&p.kind, PatternKind::Infix(ph) if ph.trim().is_empty()) {
                    return Err(Error::RelationSpec(format!("relation {}: empty phrase", spec.id)));
                }
            }
        }
        Ok(())
    }

    pub fn specs(&self) -> &[RelationSpec] {
        &self.specs
    }

    pub fn get(&self, id: &str) -> Option<&RelationSpec> {
        self.specs.iter().find(|s| s.id == id)
    }

    /// Specs usable by the heading heuristics (at least one keyword).
    pub fn keyword_specs(&self) -> impl Iterator<Item = &RelationSpec> {
        self.specs.iter().filter(|s| !s.keywords.is_empty())
    }

    pub fn patterns(&self) -> impl Iterator<Item = &PatternSpec> {
        self.specs.iter().flat_map(|s| s.patterns.iter())
    }
}
