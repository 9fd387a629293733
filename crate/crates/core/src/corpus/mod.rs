//! Source ingestion: wikitext pages, glossary records and book indexes.

mod book_index;
mod glossary;
mod wikitext;

use std::fs;
use std::path::Path;

pub use book_index::{load_book_index, parse_book_index, IndexEntry};
pub use glossary::{load_glossary, parse_glossary, GlossaryEntry};
pub use wikitext::{
    classify_page, parse_wikitext, Heading, Link, ListItem, PageKind, Template, TemplateRow, WikiDocument, LIST_PREFIX,
    OUTLINE_PREFIX,
};

use crate::error::{Error, Result};

/// Parses one page file: first line is the title, the rest is wikitext.
pub fn parse_page_file(text: &str) -> WikiDocument {
    let (title, body) = text.split_once('\n').unwrap_or((text, ""));
    parse_wikitext(body, title.trim_end_matches('\r'))
}

/// Loads every regular file in `dir` as a page, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<WikiDocument>> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        if entry.file_type().map_err(|e| Error::io(entry.path(), e))?.is_file() {
            paths.push(entry.path());
        }
    }
    paths.sort();
    paths
        .iter()
        .map(|p| {
            fs::read_to_string(p)
                .map(|t| parse_page_file(&t))
                .map_err(|e| Error::io(p, e))
        })
        .collect()
}
