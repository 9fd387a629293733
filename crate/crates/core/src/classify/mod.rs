//! Question classification with plain and knowledge-expanded bag of words.

mod cv;
mod features;
mod nb;
mod stopwords;
mod svm;

use std::fmt;

pub use cv::{assign_folds, cross_validate, Classifier, CvResult, Example, NaiveBayesClassifier, SvmClassifier};
pub use features::{
    expansion_relations, featurize_bow, featurize_bow_tkb, load_posts, parse_posts, FeatureId, FeatureVector,
    LabeledPost, DEFAULT_EXPANSION,
};
pub use nb::{predict_nb, train_nb, train_nb_with_labels, NaiveBayes};
pub use stopwords::{is_stop_word, STOP_WORDS};
pub use svm::{predict_svm, train_svm, LinearSvm, SvmParams};

use crate::annotate::Matcher;
use crate::error::Result;
use crate::store::TripleStore;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub featurizer: &'static str,
    pub classifier: String,
    pub result: CvResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub folds: usize,
    pub seed: u64,
    pub expansion_relations: Vec<String>,
    pub rows: Vec<BenchmarkRow>,
}

impl BenchmarkReport {
    pub fn get(&self, featurizer: &str, classifier: &str) -> Option<&CvResult> {
        self.rows
            .iter()
            .find(|r| r.featurizer == featurizer && r.classifier == classifier)
            .map(|r| &r.result)
    }
}

pub const BOW: &str = "BOW";
pub const BOW_TKB: &str = "BOW-TKB";

/// Both featurizers under both classifiers, `folds`-fold cross-validated.
pub fn run_benchmark<S: AsRef<str>>(
    posts: &[LabeledPost],
    matcher: &Matcher,
    store: &TripleStore,
    expansion: &[S],
    folds: usize,
    seed: u64,
    svm: SvmParams,
) -> Result<BenchmarkReport> {
    let relations = expansion_relations(store, expansion);
    let bow: Vec<Example> = posts
        .iter()
        .map(|p| (featurize_bow(p, matcher), p.label.clone()))
        .collect();
    let tkb: Vec<Example> = posts
        .iter()
        .map(|p| (featurize_bow_tkb(p, matcher, store, &relations), p.label.clone()))
        .collect();
    let classifiers: [&dyn Classifier; 2] = [&NaiveBayesClassifier, &SvmClassifier(svm)];
    let mut rows = Vec::new();
    for (name, data) in [(BOW, &bow), (BOW_TKB, &tkb)] {
        for c in classifiers {
            rows.push(BenchmarkRow {
                featurizer: name,
                classifier: c.name(),
                result: cross_validate(data, c, folds, seed)?,
            });
        }
    }
    Ok(BenchmarkReport {
        folds,
        seed,
        expansion_relations: relations,
        rows,
    })
}

impl fmt::Display for BenchmarkReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "folds\t{}", self.folds)?;
        writeln!(f, "seed\t{}", self.seed)?;
        writeln!(f, "expansion relations\t{}", self.expansion_relations.join(","))?;
        writeln!(f, "features\tclassifier\tmean accuracy\tper-fold")?;
        for row in &self.rows {
            let per_fold: Vec<String> = row.result.fold_accuracies.iter().map(|a| format!("{a:.4}")).collect();
            writeln!(
                f,
                "{}\t{}\t{:.4}\t{}",
                row.featurizer,
                row.classifier,
                row.result.mean,
                per_fold.join(" ")
            )?;
        }
        Ok(())
    }
}
