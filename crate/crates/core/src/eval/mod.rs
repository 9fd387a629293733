//! Judging extracted triples: sampling, judgment sheets and accuracy with
//! confidence intervals.

mod sample;
mod score;
mod sheet;
mod wilson;

pub use sample::{stratified_sample, stratum_draw, top_relations};
pub use score::{score_judgments, AccuracyReport, RelationAccuracy, SourceBreakdown};
pub use sheet::{JudgmentSheet, Label, SheetRow};
pub use wilson::{normal_quantile, wilson_interval};

pub const DEFAULT_CONFIDENCE: f64 = 0.95;
