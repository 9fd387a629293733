use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::sheet::JudgmentSheet;
use super::wilson::wilson_interval;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SourceBreakdown {
    pub evaluated: usize,
    pub incorrect: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationAccuracy {
    pub relation: String,
    pub evaluated: usize,
    pub correct: usize,
    pub accuracy: f64,
    pub low: f64,
    pub high: f64,
    pub by_source: BTreeMap<String, SourceBreakdown>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyReport {
    pub confidence: f64,
    /// Most evaluated relation first.
    pub relations: Vec<RelationAccuracy>,
}

/// Per-relation accuracy (both judges must say correct) with Wilson
/// intervals. Any blank label is an error listing the 1-based rows.
pub fn score_judgments(sheet: &JudgmentSheet, confidence: f64) -> Result<AccuracyReport> {
    let blanks: Vec<usize> = sheet
        .rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_blank())
        .map(|(i, _)| i + 1)
        .collect();
    if !blanks.is_empty() {
        return Err(Error::BlankLabels(blanks));
    }
    let mut groups: BTreeMap<&str, Vec<&super::SheetRow>> = BTreeMap::new();
    for row in &sheet.rows {
        groups.entry(&row.relation).or_default().push(row);
    }
    let mut relations = Vec::new();
    for (relation, rows) in groups {
        let correct = rows.iter().filter(|r| r.is_correct()).count();
        let (low, high) = wilson_interval(correct, rows.len(), confidence)?;
        let mut by_source: BTreeMap<String, SourceBreakdown> = BTreeMap::new();
        for r in &rows {
            let entry = by_source.entry(r.source.clone()).or_default();
            entry.evaluated += 1;
            entry.incorrect += usize::from(!r.is_correct());
        }
        relations.push(RelationAccuracy {
            relation: relation.to_string(),
            evaluated: rows.len(),
            correct,
            accuracy: correct as f64 / rows.len() as f64,
            low,
            high,
            by_source,
        });
    }
    relations.sort_by(|a, b| b.evaluated.cmp(&a.evaluated).then_with(|| a.relation.cmp(&b.relation)));
    Ok(AccuracyReport { confidence, relations })
}

impl fmt::Display for AccuracyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "confidence\t{}", self.confidence)?;
        writeln!(f, "relation\tevaluated\taccuracy\tlow\thigh")?;
        for r in &self.relations {
            writeln!(
                f,
                "{}\t{}\t{:.4}\t{:.4}\t{:.4}",
                r.relation, r.evaluated, r.accuracy, r.low, r.high
            )?;
        }
        writeln!(f)?;
        writeln!(f, "relation\tsource\tevaluated\tincorrect")?;
        for r in &self.relations {
            for (source, b) in &r.by_source {
                writeln!(f, "{}\t{}\t{}\t{}", r.relation, source, b.evaluated, b.incorrect)?;
            }
        }
        Ok(())
    }
}
