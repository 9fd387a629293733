//! Heuristics keyed on relation keywords in section headings.

use super::Emitter;
use crate::corpus::WikiDocument;
use crate::relations::{RelationSet, RelationSpec};
use crate::triple::{Extractor, Provenance, Triple};

/// Whole-word, case-insensitive, plural-tolerant keyword test.
pub fn heading_matches(heading: &str, spec: &RelationSpec) -> bool {
    let words: Vec<String> = heading
        .split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect();
    spec.keywords
        .iter()
        .map(|k| k.trim().to_lowercase())
        .any(|k| words.iter().any(|w| is_form_of(w, &k)))
}

/// `word` is `keyword` or one of its regular plurals.
fn is_form_of(word: &str, keyword: &str) -> bool {
    if word == keyword {
        return true;
    }
    let plural = |suffix: &str| word.strip_suffix(suffix) == Some(keyword);
    plural("s")
        || plural("es")
        || keyword
            .strip_suffix('y')
            .is_some_and(|stem| word.strip_suffix("ies") == Some(stem))
        || keyword.strip_suffix('s').is_some_and(|stem| stem == word)
}

/// TOC heuristic: under a keyword-bearing heading, each linked item of its
/// immediate scope and each direct sub-heading relates to the page title.
pub fn extract_toc_relations(doc: &WikiDocument, relations: &RelationSet) -> Vec<Triple> {
    let mut out = Emitter::new();
    for (h, heading) in doc.headings.iter().enumerate() {
        for spec in relations.keyword_specs() {
            if !heading_matches(&heading.text, spec) {
                continue;
            }
            let prov = Provenance::new(Extractor::Toc, &doc.title, &heading.text);
            for item in doc.scope(Some(h)) {
                if let Some(target) = item.primary_link() {
                    out.emit(target, &spec.id, &doc.title, &prov);
                }
            }
            for child in doc.children(h) {
                out.emit(&doc.headings[child].text, &spec.id, &doc.title, &prov);
            }
        }
    }
    out.finish()
}

/// Section-list pattern: a keyword-bearing heading without sub-headings
/// whose scope is a list holding at least one link; every link target
/// relates to the page title.
pub fn extract_section_lists(doc: &WikiDocument, relations: &RelationSet) -> Vec<Triple> {
    let mut out = Emitter::new();
    for (h, heading) in doc.headings.iter().enumerate() {
        if doc.children(h).next().is_some() {
            continue;
        }
        let scope = doc.scope(Some(h));
        if scope.iter().all(|item| item.links.is_empty()) {
            continue;
        }
        for spec in relations.keyword_specs() {
            if !heading_matches(&heading.text, spec) {
                continue;
            }
            let prov = Provenance::new(Extractor::SectionList, &doc.title, &heading.text);
            for link in scope.iter().flat_map(|item| &item.links) {
                out.emit(&link.target, &spec.id, &doc.title, &prov);
            }
        }
    }
    out.finish()
}
