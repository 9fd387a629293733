use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// Canonical key for a concept name: NFC, surrounding punctuation stripped,
/// runs of whitespace or underscores joined by a single `_`, case untouched.
pub fn normalize_name(raw: &str) -> Result<String> {
    let nfc: String = raw.nfc().collect();
    let joined = nfc
        .split(|c: char| c.is_whitespace() || c == '_')
        .filter(|w| !w.is_empty())
        .collect::<Vec<_>>()
        .join("_");
    let key = strip_punctuation(&joined);
    if key.is_empty() {
        return Err(Error::EmptyName(raw.to_string()));
    }
    Ok(key.to_string())
}

/// Characters that may legitimately end a technical name ("C++", "C#").
fn keeps(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '+' | '#' | '(' | ')')
}

fn strip_punctuation(s: &str) -> &str {
    let mut s = s.trim_matches(|c: char| !keeps(c));
    loop {
        let before = s.len();
        let opens = s.matches('(').count();
        let closes = s.matches(')').count();
        if closes > opens {
            if let Some(rest) = s.strip_suffix(')') {
                s = rest;
            }
        } else if opens > closes {
            if let Some(rest) = s.strip_prefix('(') {
                s = rest;
            }
        }
        s = s.trim_matches(|c: char| !keeps(c));
        if s.len() == before {
            return s;
        }
    }
}
