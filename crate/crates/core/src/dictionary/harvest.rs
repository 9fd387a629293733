use std::collections::BTreeMap;

use super::{normalize_name, Candidate, Source};
use crate::corpus::{GlossaryEntry, IndexEntry};

/// One candidate per distinct normalized name per source, sorted by
/// (key, source). Names that normalize to nothing are dropped.
pub fn harvest_entities<S: AsRef<str>>(
    wiki_titles: &[S],
    glossary: &[GlossaryEntry],
    index: &[IndexEntry],
) -> Vec<Candidate> {
    let observed = wiki_titles
        .iter()
        .map(|t| (t.as_ref(), Source::WikiTitle))
        .chain(
            glossary
                .iter()
                .map(|g| (g.term.as_str(), Source::Glossary(g.source.clone()))),
        )
        .chain(index.iter().map(|e| (e.term.as_str(), Source::Book(e.book.clone()))));

    let mut merged: BTreeMap<(String, Source), Candidate> = BTreeMap::new();
    for (raw, source) in observed {
        let Ok(key) = normalize_name(raw) else {
            continue;
        };
        merged
            .entry((key.clone(), source.clone()))
            .or_insert_with(|| Candidate::new(key, source))
            .surfaces
            .insert(raw.trim().to_string());
    }
    merged.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gloss(term: &str, site: &str) -> GlossaryEntry {
        GlossaryEntry {
            term: term.into(),
            definition: String::new(),
            source: site.into(),
        }
    }

    fn idx(term: &str, book: &str) -> IndexEntry {
        IndexEntry {
            term: term.into(),
            parent: None,
            book: book.into(),
        }
    }

    #[test]
    fn wiki_title() {
        let c = harvest_entities(&["Heap sort"], &[], &[]);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].key, "Heap_sort");
        assert_eq!(c[0].source, Source::WikiTitle);
    }

    #[test]
    fn empty() {
        assert!(harvest_entities::<&str>(&[], &[], &[]).is_empty());
    }

    #[test]
    fn distinct_provenance() {
        let c = harvest_entities::<&str>(
            &[],
            &[gloss("average page depth", "siteA")],
            &[idx("Herbrand universe", "logic")],
        );
        let got: Vec<_> = c.iter().map(|c| (c.key.as_str(), c.source.to_string())).collect();
        assert_eq!(
            got,
            vec![
                ("Herbrand_universe", "book:logic".to_string()),
                ("average_page_depth", "glossary:siteA".to_string()),
            ]
        );
    }

    #[test]
    fn one_candidate_per_name_per_source() {
        let c = harvest_entities(
            &["heap sort", "heap  sort", " "],
            &[gloss("heap sort", "a"), gloss("heap sort", "b")],
            &[],
        );
        assert_eq!(c.len(), 3);
        assert_eq!(c[0].source, Source::WikiTitle);
        assert_eq!(c[0].surfaces.len(), 2);
        assert!(c
            .windows(2)
            .all(|w| (&w[0].key, &w[0].source) < (&w[1].key, &w[1].source)));
    }
}
