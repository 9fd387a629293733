use super::Emitter;
use crate::corpus::WikiDocument;
use crate::relations::TYPE_OF;
use crate::triple::{Extractor, Provenance, Triple};

/// Nested lists: a linked item at depth d+1 is a type of the linked item at
/// depth d directly above it in the same section.
pub fn extract_list_hierarchies(doc: &WikiDocument) -> Vec<Triple> {
    let mut out = Emitter::new();
    let scopes = std::iter::once(None).chain((0..doc.headings.len()).map(Some));
    for scope_id in scopes {
        let location = scope_id.map_or("(preamble)", |h| doc.headings[h].text.as_str());
        let prov = Provenance::new(Extractor::ListHierarchy, &doc.title, location);
        let scope = doc.scope(scope_id);
        for (i, item) in scope.iter().enumerate() {
            let Some(child) = item.primary_link() else {
                continue;
            };
            let parent = scope[..i].iter().rev().find(|p| p.depth < item.depth);
            if let Some(parent) = parent.filter(|p| p.depth + 1 == item.depth) {
                if let Some(parent) = parent.primary_link() {
                    out.emit(child, TYPE_OF, parent, &prov);
                }
            }
        }
    }
    out.finish()
}
