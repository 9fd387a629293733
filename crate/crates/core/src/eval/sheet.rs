use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::store::TripleStore;

/// One judge's verdict on a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Label {
    Correct,
    Incorrect,
    /// Not yet judged.
    #[default]
    Blank,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Correct => "correct",
            Label::Incorrect => "incorrect",
            Label::Blank => "",
        })
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "correct" => Ok(Label::Correct),
            "incorrect" => Ok(Label::Incorrect),
            "" => Ok(Label::Blank),
            other => Err(Error::InvalidArgument(format!(
                "label {other:?} is not one of correct, incorrect or blank"
            ))),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheetRow {
    pub subject: String,
    pub relation: String,
    pub object: String,
    /// Extractor id the triple is attributed to.
    pub source: String,
    /// Where a judge can look the triple up, `document#location`.
    pub provenance_hint: String,
    pub judge1: Label,
    pub judge2: Label,
}

impl SheetRow {
    /// Correct only when both judges agree it is.
    pub fn is_correct(&self) -> bool {
        self.judge1 == Label::Correct && self.judge2 == Label::Correct
    }

    pub fn is_blank(&self) -> bool {
        self.judge1 == Label::Blank || self.judge2 == Label::Blank
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JudgmentSheet {
    pub rows: Vec<SheetRow>,
}

impl JudgmentSheet {
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        if self.rows.is_empty() {
            writer
                .write_record([
                    "subject",
                    "relation",
                    "object",
                    "source",
                    "provenance_hint",
                    "judge1",
                    "judge2",
                ])
                .map_err(csv_error)?;
        }
        for row in &self.rows {
            writer.serialize(row).map_err(csv_error)?;
        }
        writer.flush().map_err(|e| Error::io("<sheet>", e))
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("sheet is UTF-8")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    pub fn parse(text: &str, path: &Path) -> Result<JudgmentSheet> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for (i, record) in reader.deserialize().enumerate() {
            // header is line 1
            let row: SheetRow = record.map_err(|e| Error::parse(path, i + 2, e.to_string()))?;
            rows.push(row);
        }
        Ok(JudgmentSheet { rows })
    }

    pub fn load(path: &Path) -> Result<JudgmentSheet> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        JudgmentSheet::parse(&text, path)
    }

    /// Errors on the first row whose triple is not in `store`.
    pub fn check_against(&self, store: &TripleStore) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if !store.contains(&row.subject, &row.relation, &row.object) {
                return Err(Error::InvalidArgument(format!(
                    "sheet row {} ({} {} {}) is not in the store",
                    i + 1,
                    row.subject,
                    row.relation,
                    row.object
                )));
            }
        }
        Ok(())
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("CSV error: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(judge1: Label, judge2: Label) -> SheetRow {
        SheetRow {
            subject: "JPEG".into(),
            relation: "synonymOf".into(),
            object: "Joint, \"Photographic\"".into(),
            source: "surface-patterns".into(),
            provenance_hint: "g#0".into(),
            judge1,
            judge2,
        }
    }

    #[test]
    fn csv_round_trip() {
        let sheet = JudgmentSheet {
            rows: vec![row(Label::Blank, Label::Blank), row(Label::Correct, Label::Incorrect)],
        };
        let text = sheet.to_csv();
        assert!(text.starts_with("subject,relation,object,source,provenance_hint,judge1,judge2\n"));
        assert_eq!(JudgmentSheet::parse(&text, Path::new("s.csv")).unwrap(), sheet);
        let empty = JudgmentSheet::default().to_csv();
        assert_eq!(empty.lines().count(), 1);
        assert!(JudgmentSheet::parse(&empty, Path::new("s.csv"))
            .unwrap()
            .rows
            .is_empty());
    }

    #[test]
    fn labels_are_lenient_on_case_only() {
        assert_eq!(" Correct ".parse::<Label>().unwrap(), Label::Correct);
        assert!("yes".parse::<Label>().is_err());
        let text = "subject,relation,object,source,provenance_hint,judge1,judge2\na,r,b,toc,x,maybe,correct\n";
        assert!(matches!(
            JudgmentSheet::parse(text, Path::new("s.csv")),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn conjunction_rule() {
        assert!(row(Label::Correct, Label::Correct).is_correct());
        assert!(!row(Label::Correct, Label::Incorrect).is_correct());
        assert!(row(Label::Correct, Label::Blank).is_blank());
    }
}
