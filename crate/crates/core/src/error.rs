use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid name {0:?}: empty after trimming")]
    EmptyName(String),

    #[error("threshold {0} is outside [0, 1]")]
    Threshold(f64),

    #[error("cannot build a matcher from an empty dictionary")]
    EmptyDictionary,

    #[error("expected relation synonymOf, found {0}")]
    NotSynonym(String),

    #[error("malformed triple {subject:?} {relation:?} {object:?}: {reason}")]
    MalformedTriple {
        subject: String,
        relation: String,
        object: String,
        reason: &'static str,
    },

    #[error("page {title:?} is a {kind}, expected {expected}")]
    WrongPageKind {
        title: String,
        kind: String,
        expected: &'static str,
    },

    #[error("row header {0:?} is empty after stripping")]
    EmptyHeader(String),

    #[error("annotation span {start}..{end} is invalid for text of {len} characters")]
    BadSpan { start: usize, end: usize, len: usize },

    #[error("relation spec error: {0}")]
    RelationSpec(String),

    #[error("cannot sample from an empty store")]
    EmptyStore,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unjudged rows (blank labels) at sheet rows {0:?}")]
    BlankLabels(Vec<usize>),

    #[error("label {0:?} has no training examples")]
    MissingLabel(String),

    #[error("label {label:?} has {count} examples, fewer than {folds} folds")]
    TooFewExamples { label: String, count: usize, folds: usize },

    #[error("{0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
