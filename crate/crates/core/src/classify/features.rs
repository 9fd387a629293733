use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::stopwords::is_stop_word;
use crate::annotate::Matcher;
use crate::error::{Error, Result};
use crate::store::TripleStore;

/// Relation stems used for expansion when none are configured.
pub const DEFAULT_EXPANSION: [&str; 6] = ["algorithm", "definition", "concept", "topic", "approach", "method"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledPost {
    pub id: String,
    pub title: String,
    #[serde(default)]
    pub body: String,
    pub label: String,
}

/// Reads a JSONL posts file (`id`, `title`, `body`, `label`).
pub fn load_posts(path: &Path) -> Result<Vec<LabeledPost>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_posts(&text, path)
}

pub fn parse_posts(text: &str, path: &Path) -> Result<Vec<LabeledPost>> {
    let mut posts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let post: LabeledPost =
            serde_json::from_str(line).map_err(|e| Error::parse(path, i + 1, format!("malformed post: {e}")))?;
        if post.title.trim().is_empty() && post.body.trim().is_empty() {
            return Err(Error::parse(path, i + 1, format!("post {} has no text", post.id)));
        }
        if post.label.trim().is_empty() {
            return Err(Error::parse(path, i + 1, format!("post {} has no label", post.id)));
        }
        posts.push(post);
    }
    Ok(posts)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FeatureId {
    Word(String),
    /// A whole annotated entity, never split into words.
    Entity(String),
    /// An object reached from a mentioned entity through the knowledge base.
    Expansion(String),
}

/// Sparse feature counts; every stored count is at least 1.
pub type FeatureVector = BTreeMap<FeatureId, u32>;

fn add_text(fv: &mut FeatureVector, text: &str, matcher: &Matcher) {
    let spans = matcher.annotate(text);
    let mut rest = String::with_capacity(text.len());
    let mut next = spans.iter().peekable();
    for (i, c) in text.chars().enumerate() {
        while next.peek().is_some_and(|s| s.end <= i) {
            next.next();
        }
        match next.peek() {
            Some(s) if s.start <= i => rest.push(' '),
            _ => rest.push(c),
        }
    }
    for span in &spans {
        *fv.entry(FeatureId::Entity(span.entity.clone())).or_default() += 1;
    }
    for word in rest.split(|c: char| !c.is_alphanumeric()) {
        let word = word.to_lowercase();
        if !word.is_empty() && !is_stop_word(&word) {
            *fv.entry(FeatureId::Word(word)).or_default() += 1;
        }
    }
}

/// Words (lowercased, stop words dropped) plus whole-entity features from
/// the title and body. The two fields are annotated separately so a
/// mention never spans them.
pub fn featurize_bow(post: &LabeledPost, matcher: &Matcher) -> FeatureVector {
    let mut fv = FeatureVector::new();
    add_text(&mut fv, &post.title, matcher);
    add_text(&mut fv, &post.body, matcher);
    fv
}

/// Relation ids in `store` whose stem (id without a trailing `Of`/`For`,
/// case-folded) is one of `stems`.
pub fn expansion_relations<S: AsRef<str>>(store: &TripleStore, stems: &[S]) -> Vec<String> {
    let wanted: BTreeSet<String> = stems.iter().map(|s| relation_stem(s.as_ref())).collect();
    store
        .relations()
        .filter(|r| wanted.contains(&relation_stem(r)))
        .map(str::to_string)
        .collect()
}

fn relation_stem(id: &str) -> String {
    let base = id
        .strip_suffix("Of")
        .or_else(|| id.strip_suffix("For"))
        .filter(|b| !b.is_empty())
        .unwrap_or(id);
    base.to_lowercase()
}

/// BOW features plus one expansion feature per (entity, relation, object)
/// reachable from each distinct mentioned entity.
pub fn featurize_bow_tkb(
    post: &LabeledPost,
    matcher: &Matcher,
    store: &TripleStore,
    relations: &[String],
) -> FeatureVector {
    let mut fv = featurize_bow(post, matcher);
    let entities: Vec<String> = fv
        .keys()
        .filter_map(|f| match f {
            FeatureId::Entity(e) => Some(e.clone()),
            _ => None,
        })
        .collect();
    for entity in &entities {
        for relation in relations {
            for object in store.objects_of(entity, relation) {
                *fv.entry(FeatureId::Expansion(object)).or_default() += 1;
            }
        }
    }
    fv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::build_matcher;
    use crate::dictionary::{Dictionary, Entity};
    use crate::triple::{Extractor, Provenance, Triple};

    fn matcher() -> Matcher {
        let dict: Dictionary = ["run_length_encoding", "huffman_coding", "data_compression"]
            .into_iter()
            .map(Entity::new)
            .collect();
        build_matcher(&dict).unwrap()
    }

    fn post(title: &str, body: &str) -> LabeledPost {
        LabeledPost {
            id: "1".into(),
            title: title.into(),
            body: body.into(),
            label: "x".into(),
        }
    }

    fn store(triples: &[(&str, &str, &str)]) -> TripleStore {
        triples
            .iter()
            .map(|(s, r, o)| Triple::new(*s, *r, *o, Provenance::new(Extractor::Toc, "d", "")).unwrap())
            .collect()
    }

    fn word(w: &str) -> FeatureId {
        FeatureId::Word(w.into())
    }

    #[test]
    fn entities_stay_whole() {
        let fv = featurize_bow(&post("How does run length encoding work", ""), &matcher());
        assert_eq!(fv.get(&FeatureId::Entity("run_length_encoding".into())), Some(&1));
        assert_eq!(fv.get(&word("work")), Some(&1));
        assert!(!fv.contains_key(&word("run")));
        assert!(!fv.contains_key(&word("how")));
        assert!(!fv.contains_key(&word("does")));
        assert_eq!(fv.len(), 2);
    }

    #[test]
    fn title_only_and_counting() {
        let fv = featurize_bow(&post("huffman coding vs Huffman-Coding", ""), &matcher());
        assert_eq!(fv.get(&FeatureId::Entity("huffman_coding".into())), Some(&2));
        assert_eq!(fv.get(&word("vs")), Some(&1));
        let both = featurize_bow(&post("encoding", "encoding"), &matcher());
        assert_eq!(both.get(&word("encoding")), Some(&2));
    }

    #[test]
    fn expansion_adds_objects() {
        let kb = store(&[
            ("run_length_encoding", "methodOf", "data_compression"),
            ("run_length_encoding", "typeOf", "x"),
        ]);
        let rels = expansion_relations(&kb, &DEFAULT_EXPANSION);
        assert_eq!(rels, vec!["methodOf"]);
        let fv = featurize_bow_tkb(&post("run length encoding", ""), &matcher(), &kb, &rels);
        assert_eq!(fv.get(&FeatureId::Expansion("data_compression".into())), Some(&1));
        assert!(!fv.contains_key(&FeatureId::Expansion("x".into())));
    }

    #[test]
    fn shared_objects_count_twice() {
        let kb = store(&[
            ("run_length_encoding", "methodOf", "data_compression"),
            ("huffman_coding", "algorithmFor", "data_compression"),
        ]);
        let rels = expansion_relations(&kb, &DEFAULT_EXPANSION);
        let fv = featurize_bow_tkb(
            &post("run length encoding and huffman coding, run length encoding", ""),
            &matcher(),
            &kb,
            &rels,
        );
        assert_eq!(fv.get(&FeatureId::Expansion("data_compression".into())), Some(&2));
    }

    #[test]
    fn no_triples_means_plain_bow() {
        let p = post("run length encoding", "what is it");
        let kb = store(&[("other", "methodOf", "thing")]);
        let rels = expansion_relations(&kb, &DEFAULT_EXPANSION);
        assert_eq!(
            featurize_bow_tkb(&p, &matcher(), &kb, &rels),
            featurize_bow(&p, &matcher())
        );
    }

    #[test]
    fn stems() {
        assert_eq!(relation_stem("methodOf"), "method");
        assert_eq!(relation_stem("algorithmFor"), "algorithm");
        assert_eq!(relation_stem("Of"), "of");
        assert_eq!(relation_stem("method"), "method");
    }

    #[test]
    fn posts_file() {
        let text = "{\"id\":\"1\",\"title\":\"t\",\"body\":\"b\",\"label\":\"db\"}\n\n{\"id\":\"2\",\"title\":\"t\",\"label\":\"net\"}\n";
        let posts = parse_posts(text, Path::new("p.jsonl")).unwrap();
        assert_eq!(posts.len(), 2);
        assert_eq!(posts[1].body, "");
        assert!(parse_posts("{\"id\":\"1\",\"title\":\" \",\"label\":\"db\"}", Path::new("p")).is_err());
        assert!(parse_posts("{\"id\":\"1\",\"title\":\"t\",\"label\":\"\"}", Path::new("p")).is_err());
    }
}
