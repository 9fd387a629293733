use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A term from a textbook index, possibly nested under a parent term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub term: String,
    pub parent: Option<String>,
    pub book: String,
}

/// Loads an indented book index; the book id is the file stem.
pub fn load_book_index(path: &Path) -> Result<Vec<IndexEntry>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let book = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_book_index(&text, &book, path)
}

/// One nesting level is a tab or two spaces.
fn indent_level(line: &str) -> usize {
    let mut level = 0;
    let mut spaces = 0;
    for c in line.chars() {
        match c {
            '\t' => {
                level += 1 + spaces / 2;
                spaces = 0;
            }
            ' ' => spaces += 1,
            _ => break,
        }
    }
    level + spaces / 2
}

pub fn parse_book_index(text: &str, book: &str, path: &Path) -> Result<Vec<IndexEntry>> {
    let mut entries = Vec::new();
    // (level, term) of the open ancestors
    let mut stack: Vec<(usize, String)> = Vec::new();

    for (idx, line) in text.lines().enumerate() {
        let term = line.trim();
        if term.is_empty() {
            continue;
        }
        let level = indent_level(line);
        while stack.last().is_some_and(|(l, _)| *l >= level) {
            stack.pop();
        }
        let parent = match stack.last() {
            Some((_, p)) => Some(p.clone()),
            None if level > 0 => {
                return Err(Error::parse(
                    path,
                    idx + 1,
                    format!("subterm {term:?} has no preceding top-level term"),
                ))
            }
            None => None,
        };
        if parent.as_deref() == Some(term) {
            return Err(Error::parse(
                path,
                idx + 1,
                format!("term {term:?} is nested under itself"),
            ));
        }
        entries.push(IndexEntry {
            term: term.to_string(),
            parent,
            book: book.to_string(),
        });
        stack.push((level, term.to_string()));
    }
    Ok(entries)
}
