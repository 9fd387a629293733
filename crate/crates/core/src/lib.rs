//! Building a knowledge base of technical concepts from semi-structured
//! wiki pages, glossaries and book indexes, plus the tooling to evaluate it
//! and to use it for text classification.

pub mod annotate;
pub mod classify;
pub mod corpus;
pub mod dictionary;
pub mod error;
pub mod eval;
pub mod extract;
pub mod patterns;
pub mod relations;
pub mod store;
pub mod triple;

pub use annotate::{annotate, build_matcher, AnnotatedSpan, Matcher};
pub use dictionary::{Dictionary, Entity, Source};
pub use error::{Error, Result};
pub use relations::{PatternSpec, RelationSet, RelationSpec};
pub use store::{KBStats, TripleStore};
pub use triple::{Extractor, Provenance, Triple, TripleKey};
