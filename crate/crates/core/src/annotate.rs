//! Dictionary-based mention tagging.
//!
//! Surface forms and text are cut into the same units: maximal alphanumeric
//! runs (case-folded) and single punctuation characters. Whitespace, `_` and
//! `-` are interchangeable separators between units. A form matches when its
//! units and separator placement equal a run of text units, so a form can
//! never match inside a longer alphanumeric token.

use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::dictionary::Dictionary;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedSpan {
    /// Character offsets, end exclusive.
    pub start: usize,
    pub end: usize,
    pub entity: String,
    pub surface: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Unit {
    pub text: String,
    /// A separator precedes this unit.
    pub gap: bool,
    pub start: usize,
    pub end: usize,
}

fn is_separator(c: char) -> bool {
    c.is_whitespace() || c == '_' || c == '-'
}

pub(crate) fn units(text: &str) -> Vec<Unit> {
    let mut out: Vec<Unit> = Vec::new();
    let mut gap = false;
    let mut in_word = false;
    for (i, c) in text.chars().enumerate() {
        if c.is_alphanumeric() {
            if in_word {
                let last = out.last_mut().expect("open word");
                last.text.extend(c.to_lowercase());
                last.end = i + 1;
            } else {
                out.push(Unit {
                    text: c.to_lowercase().collect(),
                    gap,
                    start: i,
                    end: i + 1,
                });
                in_word = true;
                gap = false;
            }
        } else {
            in_word = false;
            if is_separator(c) {
                gap = true;
            } else {
                out.push(Unit {
                    text: c.to_string(),
                    gap,
                    start: i,
                    end: i + 1,
                });
                gap = false;
            }
        }
    }
    out
}

/// The separator-insensitive, case-folded shape of a surface form.
pub fn form_key(surface: &str) -> Vec<(bool, String)> {
    units(surface)
        .into_iter()
        .enumerate()
        .map(|(i, u)| (i > 0 && u.gap, u.text))
        .collect()
}

#[derive(Debug, Default, Clone)]
struct Node {
    /// Children reached by a unit directly adjacent to the previous one.
    tight: HashMap<Box<str>, usize>,
    /// Children reached by a unit after a separator.
    spaced: HashMap<Box<str>, usize>,
    /// (entity index, source count) of the form ending here.
    terminal: Option<(usize, usize)>,
}

impl Node {
    fn children(&self, gap: bool) -> &HashMap<Box<str>, usize> {
        if gap {
            &self.spaced
        } else {
            &self.tight
        }
    }

    fn children_mut(&mut self, gap: bool) -> &mut HashMap<Box<str>, usize> {
        if gap {
            &mut self.spaced
        } else {
            &mut self.tight
        }
    }
}

/// Immutable leftmost-longest matcher over a dictionary's surface forms.
#[derive(Debug, Clone)]
pub struct Matcher {
    nodes: Vec<Node>,
    entities: Vec<String>,
}

impl Matcher {
    pub fn build(dict: &Dictionary) -> Result<Matcher> {
        if dict.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        let mut matcher = Matcher {
            nodes: vec![Node::default()],
            entities: Vec::with_capacity(dict.len()),
        };
        for entity in dict.entities() {
            let idx = matcher.entities.len();
            matcher.entities.push(entity.canonical.clone());
            let forms = entity.surface_forms.iter().chain(std::iter::once(&entity.canonical));
            for form in forms {
                matcher.insert(form, idx, entity.sources.len());
            }
        }
        Ok(matcher)
    }

    fn insert(&mut self, form: &str, entity: usize, weight: usize) {
        let key = form_key(form);
        if key.is_empty() {
            return;
        }
        let mut node = 0;
        for (gap, text) in key {
            let next = self.nodes.len();
            let children = self.nodes[node].children_mut(gap);
            node = *children.entry(text.into_boxed_str()).or_insert(next);
            if node == next {
                self.nodes.push(Node::default());
            }
        }
        let slot = &mut self.nodes[node].terminal;
        let replace = match *slot {
            None => true,
            Some((current, current_weight)) => {
                current != entity
                    && (weight > current_weight
                        || (weight == current_weight && self.entities[entity] < self.entities[current]))
            }
        };
        if replace {
            *slot = Some((entity, weight));
        }
    }

    /// Number of distinct entities the matcher can emit.
    pub fn entity_count(&self) -> usize {
        self.entities.len()
    }

    /// Leftmost-longest, non-overlapping mentions in `text`.
    pub fn annotate(&self, text: &str) -> Vec<AnnotatedSpan> {
        let units = units(text);
        let chars: Vec<char> = text.chars().collect();
        let mut spans = Vec::new();
        let mut i = 0;
        while i < units.len() {
            let mut node = 0;
            let mut best = None;
            for (j, unit) in units.iter().enumerate().skip(i) {
                let Some(&next) = self.nodes[node].children(j > i && unit.gap).get(unit.text.as_str()) else {
                    break;
                };
                node = next;
                if let Some((entity, _)) = self.nodes[node].terminal {
                    best = Some((j, entity));
                }
            }
            match best {
                Some((j, entity)) => {
                    let (start, end) = (units[i].start, units[j].end);
                    spans.push(AnnotatedSpan {
                        start,
                        end,
                        entity: self.entities[entity].clone(),
                        surface: chars[start..end].iter().collect(),
                    });
                    i = j + 1;
                }
                None => i += 1,
            }
        }
        spans
    }
}

pub fn build_matcher(dict: &Dictionary) -> Result<Matcher> {
    Matcher::build(dict)
}

pub fn annotate(text: &str, matcher: &Matcher) -> Vec<AnnotatedSpan> {
    matcher.annotate(text)
}

/// Debug dump: one `doc<TAB>start<TAB>end<TAB>entity` line per span.
pub fn write_annotation_dump(out: &mut impl Write, doc_id: &str, spans: &[AnnotatedSpan]) -> std::io::Result<()> {
    for s in spans {
        writeln!(out, "{doc_id}\t{}\t{}\t{}", s.start, s.end, s.entity)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dictionary::{Entity, Source};

    fn dict(keys: &[&str]) -> Dictionary {
        keys.iter()
            .map(|k| {
                let mut e = Entity::new(*k);
                e.sources.insert(Source::WikiTitle);
                e
            })
            .collect()
    }

    fn keys(spans: &[AnnotatedSpan]) -> Vec<&str> {
        spans.iter().map(|s| s.entity.as_str()).collect()
    }

    #[test]
    fn multiword_entity() {
        let m = build_matcher(&dict(&["run_length_encoding", "data_compression"])).unwrap();
        let spans = m.annotate("use run length encoding here");
        assert_eq!(keys(&spans), vec!["run_length_encoding"]);
        assert_eq!((spans[0].start, spans[0].end), (4, 23));
        assert_eq!(spans[0].surface, "run length encoding");
        assert_eq!(keys(&m.annotate("Data-Compression rocks")), vec!["data_compression"]);
    }

    #[test]
    fn empty_text_and_dictionary() {
        let m = build_matcher(&dict(&["x"])).unwrap();
        assert!(m.annotate("").is_empty());
        assert!(matches!(build_matcher(&Dictionary::new()), Err(Error::EmptyDictionary)));
    }

    #[test]
    fn single_letter_respects_boundaries() {
        let m = build_matcher(&dict(&["C"])).unwrap();
        assert_eq!(keys(&m.annotate("written in C.")), vec!["C"]);
        assert!(m.annotate("ABC and Cobol").is_empty());
    }

    #[test]
    fn longest_wins() {
        let m = build_matcher(&dict(&["list", "xor_linked_list"])).unwrap();
        let spans = m.annotate("xor linked list");
        assert_eq!(spans.len(), 1);
        assert_eq!(spans[0].entity, "xor_linked_list");
        assert_eq!((spans[0].start, spans[0].end), (0, 15));
        assert_eq!(
            keys(&m.annotate("a list and an xor linked list")),
            vec!["list", "xor_linked_list"]
        );
    }

    #[test]
    fn no_match_inside_words() {
        let m = build_matcher(&dict(&["list"])).unwrap();
        assert!(m.annotate("listing blacklist").is_empty());
        assert_eq!(m.annotate("list-based").len(), 1);
    }

    #[test]
    fn punctuation_is_literal() {
        let m = build_matcher(&dict(&["C++", "Symmetric/Asymmetric", "SHA-2"])).unwrap();
        assert_eq!(keys(&m.annotate("C++ code")), vec!["C++"]);
        assert_eq!(
            keys(&m.annotate("symmetric/asymmetric games")),
            vec!["Symmetric/Asymmetric"]
        );
        assert_eq!(keys(&m.annotate("SHA 2 and sha_2")), vec!["SHA-2", "SHA-2"]);
        assert!(m.annotate("SHA2").is_empty());
        assert!(m.annotate("C + +").is_empty());
    }

    #[test]
    fn ambiguous_form_goes_to_better_supported_entity() {
        let mut a = Entity::new("Photoshop");
        a.sources.insert(Source::WikiTitle);
        let mut b = Entity::new("Adobe_Photoshop");
        b.surface_forms.insert("photoshop".into());
        b.sources.insert(Source::WikiTitle);
        b.sources.insert(Source::Glossary("g".into()));
        let m = build_matcher(&[a.clone(), b].into_iter().collect()).unwrap();
        assert_eq!(keys(&m.annotate("photoshop")), vec!["Adobe_Photoshop"]);

        // equal support: lexicographically smaller key
        let mut c = Entity::new("photoshop_cs");
        c.surface_forms.insert("Photoshop".into());
        c.sources.insert(Source::Book("x".into()));
        let m = build_matcher(&[c, a].into_iter().collect()).unwrap();
        assert_eq!(keys(&m.annotate("Photoshop")), vec!["Photoshop"]);
    }

    #[test]
    fn char_offsets_with_multibyte_text() {
        let m = build_matcher(&dict(&["naïve_bayes"])).unwrap();
        let spans = m.annotate("é naïve bayes");
        assert_eq!((spans[0].start, spans[0].end), (2, 13));
        assert_eq!(spans[0].surface, "naïve bayes");
    }

    #[test]
    fn dump_format() {
        let m = build_matcher(&dict(&["list"])).unwrap();
        let mut out = Vec::new();
        write_annotation_dump(&mut out, "doc1", &m.annotate("a list")).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "doc1\t2\t6\tlist\n");
    }
}
