use super::naming::{page_subject, GLOSSARY_PREFIX};
use super::Emitter;
use crate::corpus::{PageKind, WikiDocument};
use crate::error::{Error, Result};
use crate::relations::{SUB_TOPIC_OF, TERMINOLOGY_OF, TYPE_OF};
use crate::triple::{Extractor, Provenance};

/// Section headings that organize a page rather than name a class.
const BOILERPLATE_HEADINGS: &[&str] = &[
    "see also",
    "references",
    "external links",
    "further reading",
    "notes",
    "bibliography",
    "sources",
];

pub(crate) fn is_boilerplate(heading: &str) -> bool {
    BOILERPLATE_HEADINGS.contains(&heading.trim().to_lowercase().as_str())
}

/// "List of X" pages yield `typeOf`, "Outline of X" pages `subTopicOf`:
/// each linked item relates to its heading, each heading to the page
/// subject, and preamble items directly to the page subject.
pub fn extract_overview_page(doc: &WikiDocument) -> Result<Vec<crate::triple::Triple>> {
    let relation = match doc.kind() {
        PageKind::ListPage => TYPE_OF,
        PageKind::OutlinePage => SUB_TOPIC_OF,
        kind => {
            return Err(Error::WrongPageKind {
                title: doc.title.clone(),
                kind: kind.to_string(),
                expected: "list or outline page",
            })
        }
    };
    let Some(subject) = page_subject(&doc.title) else {
        return Ok(Vec::new());
    };

    let mut out = Emitter::new();
    let preamble = Provenance::new(Extractor::OverviewPage, &doc.title, "(preamble)");
    for item in doc.scope(None) {
        if let Some(target) = item.primary_link() {
            out.emit(target, relation, &subject, &preamble);
        }
    }
    for (h, heading) in doc.headings.iter().enumerate() {
        if is_boilerplate(&heading.text) {
            continue;
        }
        let prov = Provenance::new(Extractor::OverviewPage, &doc.title, &heading.text);
        for item in doc.scope(Some(h)) {
            if let Some(target) = item.primary_link() {
                out.emit(target, relation, &heading.text, &prov);
            }
        }
        out.emit(&heading.text, relation, &subject, &prov);
    }
    Ok(out.finish())
}

/// "Glossary of X" pages: every linked item is terminology of X.
pub fn extract_glossary_page(doc: &WikiDocument) -> Vec<crate::triple::Triple> {
    if !doc.title.trim().starts_with(GLOSSARY_PREFIX) {
        return Vec::new();
    }
    let Some(subject) = page_subject(&doc.title) else {
        return Vec::new();
    };
    let mut out = Emitter::new();
    for item in &doc.items {
        let location = item
            .heading
            .map(|h| doc.headings[h].text.as_str())
            .unwrap_or("(preamble)");
        if is_boilerplate(location) {
            continue;
        }
        if let Some(target) = item.primary_link() {
            let prov = Provenance::new(Extractor::OverviewPage, &doc.title, location);
            out.emit(target, TERMINOLOGY_OF, &subject, &prov);
        }
    }
    out.finish()
}
