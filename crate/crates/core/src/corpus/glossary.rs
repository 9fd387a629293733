use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One record of a scraped technology glossary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlossaryEntry {
    pub term: String,
    #[serde(default)]
    pub definition: String,
    pub source: String,
}

/// Reads a line-delimited JSON glossary. Blank lines are skipped.
pub fn load_glossary(path: &Path) -> Result<Vec<GlossaryEntry>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_glossary(&text, path)
}

pub fn parse_glossary(text: &str, path: &Path) -> Result<Vec<GlossaryEntry>> {
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let entry: GlossaryEntry = serde_json::from_str(line)
            .map_err(|e| Error::parse(path, line_no, format!("malformed glossary record: {e}")))?;
        if entry.term.trim().is_empty() {
            return Err(Error::parse(path, line_no, "glossary record has an empty term"));
        }
        entries.push(entry);
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Vec<GlossaryEntry>> {
        parse_glossary(text, Path::new("g.jsonl"))
    }

    #[test]
    fn reads_records_in_order() {
        let text = r#"{"term":"average page depth","definition":"A web analytics metric.","source":"siteA"}
{"term":"bounce rate","source":"siteB"}
"#;
        let entries = parse(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].term, "average page depth");
        assert_eq!(entries[0].source, "siteA");
        assert_eq!(entries[1].definition, "");
    }

    #[test]
    fn empty_file() {
        assert!(parse("").unwrap().is_empty());
    }

    #[test]
    fn empty_term_names_line() {
        let text = "{\"term\":\"ok\",\"source\":\"s\"}\n\n{\"term\":\"  \",\"definition\":\"x\",\"source\":\"s\"}\n";
        match parse(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_names_line() {
        match parse("{\"term\":\"ok\",\"source\":\"s\"}\nnot json") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
