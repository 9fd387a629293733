//! Structured-source extraction heuristics over parsed wiki pages.

mod headings;
mod hierarchy;
mod naming;
mod overview;
mod template;

pub use headings::{extract_section_lists, extract_toc_relations, heading_matches};
pub use hierarchy::extract_list_hierarchies;
pub use naming::{capitalize, derive_relation_name, page_subject, singularize, singularize_word, GLOSSARY_PREFIX};
pub use overview::{extract_glossary_page, extract_overview_page};
pub use template::extract_template_relations;

use crate::corpus::{PageKind, WikiDocument};
use crate::dictionary::normalize_name;
use crate::relations::RelationSet;
use crate::triple::{Provenance, Triple};

/// Runs every extractor that applies to the page's kind.
pub fn extract_document(doc: &WikiDocument, relations: &RelationSet) -> Vec<Triple> {
    let mut out = match doc.kind() {
        PageKind::ListPage | PageKind::OutlinePage => extract_overview_page(doc).expect("page kind checked"),
        PageKind::Article => {
            let mut v = extract_toc_relations(doc, relations);
            v.extend(extract_section_lists(doc, relations));
            v.extend(extract_list_hierarchies(doc));
            v.extend(extract_glossary_page(doc));
            v
        }
    };
    out.extend(extract_template_relations(doc));
    out
}

/// Collects triples over raw names, normalizing both ends and dropping
/// self-loops and names that normalize to nothing.
pub(crate) struct Emitter {
    triples: Vec<Triple>,
}

impl Emitter {
    pub fn new() -> Self {
        Emitter { triples: Vec::new() }
    }

    pub fn emit(&mut self, subject: &str, relation: &str, object: &str, provenance: &Provenance) {
        let (Ok(s), Ok(o)) = (normalize_name(subject), normalize_name(object)) else {
            return;
        };
        if let Ok(t) = Triple::new(s, relation, o, provenance.clone()) {
            self.triples.push(t);
        }
    }

    pub fn finish(self) -> Vec<Triple> {
        self.triples
    }
}
