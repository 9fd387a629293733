use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which heuristic produced a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Extractor {
    /// "List of" / "Outline of" pages (and "Glossary of" pages).
    #[serde(rename = "list-outline-pages")]
    OverviewPage,
    #[serde(rename = "toc")]
    Toc,
    #[serde(rename = "section-list")]
    SectionList,
    #[serde(rename = "list-hierarchies")]
    ListHierarchy,
    #[serde(rename = "templates")]
    Template,
    /// Surface patterns over free text.
    #[serde(rename = "surface-patterns")]
    SurfacePattern,
}

impl Extractor {
    pub const ALL: [Extractor; 6] = [
        Extractor::OverviewPage,
        Extractor::Toc,
        Extractor::SectionList,
        Extractor::ListHierarchy,
        Extractor::Template,
        Extractor::SurfacePattern,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Extractor::OverviewPage => "list-outline-pages",
            Extractor::Toc => "toc",
            Extractor::SectionList => "section-list",
            Extractor::ListHierarchy => "list-hierarchies",
            Extractor::Template => "templates",
            Extractor::SurfacePattern => "surface-patterns",
        }
    }

    /// True for the five structured (wiki) extractors.
    pub fn is_structured(self) -> bool {
        self != Extractor::SurfacePattern
    }
}

impl fmt::Display for Extractor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Extractor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Extractor::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown extractor {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Provenance {
    pub extractor: Extractor,
    /// Title of the page (or id of the text) the triple came from.
    pub document: String,
    /// Where in the document, e.g. a heading or template row.
    pub location: String,
}

impl Provenance {
    pub fn new(extractor: Extractor, document: impl Into<String>, location: impl Into<String>) -> Self {
        Provenance {
            extractor,
            document: document.into(),
            location: location.into(),
        }
    }
}

/// Subject, relation and object without provenance.
pub type TripleKey = (String, String, String);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub subject: String,
    pub relation: String,
    pub object: String,
    pub provenance: Provenance,
}

impl Triple {
    pub fn new(
        subject: impl Into<String>,
        relation: impl Into<String>,
        object: impl Into<String>,
        provenance: Provenance,
    ) -> Result<Self> {
        let triple = Triple {
            subject: subject.into(),
            relation: relation.into(),
            object: object.into(),
            provenance,
        };
        triple.validate()?;
        Ok(triple)
    }

    pub fn validate(&self) -> Result<()> {
        let reason = if self.subject.is_empty() || self.object.is_empty() {
            Some("empty subject or object")
        } else if self.relation.is_empty() {
            Some("empty relation")
        } else if self.subject == self.object {
            Some("subject equals object")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::MalformedTriple {
                subject: self.subject.clone(),
                relation: self.relation.clone(),
                object: self.object.clone(),
                reason,
            }),
            None => Ok(()),
        }
    }

    pub fn key(&self) -> TripleKey {
        (self.subject.clone(), self.relation.clone(), self.object.clone())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} {} {}>", self.subject, self.relation, self.object)
    }
}
