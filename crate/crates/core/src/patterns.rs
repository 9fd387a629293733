//! Surface-pattern relation extraction over annotated free text.

use crate::annotate::{units, AnnotatedSpan, Unit};
use crate::error::{Error, Result};
use crate::relations::{Direction, PatternKind, PatternSpec, RelationSet, SYNONYM_OF};
use crate::triple::{Extractor, Provenance, Triple};

/// Maximum number of words between an entity mention and the phrase.
pub const ADJACENCY_WINDOW: usize = 3;

const SENTENCE_BREAKS: &[char] = &['.', '!', '?', '\n'];

/// Function words an initialism may skip ("Department of Defense" -> "DD").
const INITIALISM_SKIP: &[&str] = &["of", "and", "the", "for", "in", "on", "a", "an", "to", "by", "with"];

fn check_spans(text_len: usize, spans: &[AnnotatedSpan]) -> Result<()> {
    let mut prev_end = 0;
    for s in spans {
        if s.start >= s.end || s.end > text_len || s.start < prev_end {
            return Err(Error::BadSpan {
                start: s.start,
                end: s.end,
                len: text_len,
            });
        }
        prev_end = s.end;
    }
    Ok(())
}

/// True when `abbr` is a single token whose letters are the word initials
/// of `expansion` (optionally skipping function words). Case-insensitive;
/// hyphens, underscores and slashes split words.
pub fn is_initialism(abbr: &str, expansion: &str) -> bool {
    if abbr.chars().any(|c| c.is_whitespace() || c == '_') {
        return false;
    }
    let letters: String = abbr
        .chars()
        .filter(|c| c.is_alphanumeric())
        .flat_map(char::to_lowercase)
        .collect();
    let words: Vec<String> = expansion
        .split(|c: char| c.is_whitespace() || matches!(c, '-' | '_' | '/'))
        .filter(|w| w.chars().any(char::is_alphanumeric))
        .map(str::to_lowercase)
        .collect();
    if letters.chars().count() < 2 || words.len() < 2 {
        return false;
    }
    let initials = |skip: bool| -> String {
        words
            .iter()
            .filter(|w| !skip || !INITIALISM_SKIP.contains(&w.as_str()))
            .filter_map(|w| w.chars().find(|c| c.is_alphanumeric()))
            .collect()
    };
    letters == initials(false) || letters == initials(true)
}

struct Context<'a> {
    doc_id: &'a str,
    chars: Vec<char>,
    units: Vec<Unit>,
    spans: &'a [AnnotatedSpan],
}

impl<'a> Context<'a> {
    fn new(doc_id: &'a str, text: &str, spans: &'a [AnnotatedSpan]) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        check_spans(chars.len(), spans)?;
        Ok(Context {
            doc_id,
            chars,
            units: units(text),
            spans,
        })
    }

    fn crosses_sentence(&self, from: usize, to: usize) -> bool {
        self.chars[from..to].iter().any(|c| SENTENCE_BREAKS.contains(c))
    }

    fn words_between(&self, from: usize, to: usize) -> usize {
        self.units
            .iter()
            .filter(|u| u.start >= from && u.end <= to)
            .filter(|u| u.text.chars().all(char::is_alphanumeric))
            .count()
    }

    fn overlaps_span(&self, from: usize, to: usize) -> bool {
        self.spans.iter().any(|s| s.start < to && from < s.end)
    }

    /// (left span, right span, phrase start) for every usable occurrence.
    fn infix(&self, phrase: &str) -> Vec<(&'a AnnotatedSpan, &'a AnnotatedSpan, usize)> {
        let needle: Vec<String> = units(phrase).into_iter().map(|u| u.text).collect();
        if needle.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for window in self.units.windows(needle.len()) {
            if !window.iter().zip(&needle).all(|(u, n)| &u.text == n) {
                continue;
            }
            let (start, end) = (window[0].start, window[window.len() - 1].end);
            if self.overlaps_span(start, end) {
                continue;
            }
            let left = self.spans.iter().rev().find(|s| s.end <= start);
            let right = self.spans.iter().find(|s| s.start >= end);
            let (Some(left), Some(right)) = (left, right) else {
                continue;
            };
            if self.words_between(left.end, start) > ADJACENCY_WINDOW
                || self.words_between(end, right.start) > ADJACENCY_WINDOW
                || self.crosses_sentence(left.end, start)
                || self.crosses_sentence(end, right.start)
            {
                continue;
            }
            out.push((left, right, start));
        }
        out
    }

    /// Adjacent span pairs written `A (B)`.
    fn parenthetical(&self) -> Vec<(&'a AnnotatedSpan, &'a AnnotatedSpan)> {
        let mut out = Vec::new();
        for pair in self.spans.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let between: String = self.chars[a.end..b.start].iter().collect();
            if between.trim() != "(" {
                continue;
            }
            let after = self.chars[b.end..].iter().find(|c| !c.is_whitespace());
            if after == Some(&')') {
                out.push((a, b));
            }
        }
        out
    }

    fn triple(
        &self,
        subject: &AnnotatedSpan,
        relation: &str,
        object: &AnnotatedSpan,
        at: usize,
        label: &str,
    ) -> Option<Triple> {
        let prov = Provenance::new(Extractor::SurfacePattern, self.doc_id, format!("{label}@{at}"));
        Triple::new(&subject.entity, relation, &object.entity, prov).ok()
    }
}

/// Abbreviation first when one side is an initialism of the other.
fn synonym_order<'s>(
    left: &'s AnnotatedSpan,
    right: &'s AnnotatedSpan,
) -> Option<(&'s AnnotatedSpan, &'s AnnotatedSpan)> {
    if is_initialism(&left.surface, &right.surface) {
        Some((left, right))
    } else if is_initialism(&right.surface, &left.surface) {
        Some((right, left))
    } else {
        None
    }
}

/// Applies `specs` to `text`. Infix phrases fire when annotated mentions
/// sit within [`ADJACENCY_WINDOW`] words on both sides in the same
/// sentence; parenthetical specs fire on `A (B)` when one side is an
/// initialism of the other. `spans` must come from annotating `text`.
pub fn extract_pattern_triples(
    doc_id: &str,
    text: &str,
    spans: &[AnnotatedSpan],
    specs: &[PatternSpec],
) -> Result<Vec<Triple>> {
    let ctx = Context::new(doc_id, text, spans)?;
    let mut out = Vec::new();
    for spec in specs {
        match &spec.kind {
            PatternKind::Infix(phrase) => {
                for (left, right, at) in ctx.infix(phrase) {
                    let (s, o) = if spec.relation == SYNONYM_OF {
                        synonym_order(left, right).unwrap_or((left, right))
                    } else {
                        match spec.direction {
                            Direction::SubjectFirst => (left, right),
                            Direction::ObjectFirst => (right, left),
                        }
                    };
                    out.extend(ctx.triple(s, &spec.relation, o, at, phrase));
                }
            }
            PatternKind::Parenthetical => {
                for (a, b) in ctx.parenthetical() {
                    if let Some((s, o)) = synonym_order(a, b) {
                        out.extend(ctx.triple(s, &spec.relation, o, a.start, "(..)"));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `synonymOf` patterns of `relations` applied to `text`.
pub fn extract_synonym_triples(
    doc_id: &str,
    text: &str,
    spans: &[AnnotatedSpan],
    relations: &RelationSet,
) -> Result<Vec<Triple>> {
    let specs: Vec<PatternSpec> = relations
        .patterns()
        .filter(|p| p.relation == SYNONYM_OF)
        .cloned()
        .collect();
    extract_pattern_triples(doc_id, text, spans, &specs)
}

/// Patterns for every relation except `synonymOf`.
pub fn non_synonym_patterns(relations: &RelationSet) -> Vec<PatternSpec> {
    relations
        .patterns()
        .filter(|p| p.relation != SYNONYM_OF)
        .cloned()
        .collect()
}
