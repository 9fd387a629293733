use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::features::{FeatureId, FeatureVector};
use crate::error::{Error, Result};

/// Multinomial Naive Bayes with add-one smoothing.
#[derive(Debug, Clone, PartialEq)]
pub struct NaiveBayes {
    /// Sorted.
    labels: Vec<String>,
    log_prior: Vec<f64>,
    log_likelihood: Vec<HashMap<FeatureId, f64>>,
}

pub fn train_nb(train: &[(FeatureVector, String)]) -> Result<NaiveBayes> {
    let labels: BTreeSet<String> = train.iter().map(|(_, l)| l.clone()).collect();
    train_nb_with_labels(train, &labels.into_iter().collect::<Vec<_>>())
}

/// Like [`train_nb`], but the model must cover exactly `labels`; a label
/// with no training example is an error instead of a silently dead class.
pub fn train_nb_with_labels(train: &[(FeatureVector, String)], labels: &[String]) -> Result<NaiveBayes> {
    if train.is_empty() {
        return Err(Error::Degenerate("no training examples".into()));
    }
    let labels: Vec<String> = labels.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut docs = vec![0usize; labels.len()];
    let mut counts: Vec<HashMap<&FeatureId, u64>> = vec![HashMap::new(); labels.len()];
    let mut totals = vec![0u64; labels.len()];
    let mut vocab: BTreeSet<&FeatureId> = BTreeSet::new();
    for (fv, label) in train {
        let Some(&c) = index.get(label.as_str()) else {
            return Err(Error::InvalidArgument(format!(
                "training label {label:?} not in the label set"
            )));
        };
        docs[c] += 1;
        for (f, &n) in fv {
            *counts[c].entry(f).or_default() += u64::from(n);
            totals[c] += u64::from(n);
            vocab.insert(f);
        }
    }
    if let Some(c) = docs.iter().position(|&d| d == 0) {
        return Err(Error::MissingLabel(labels[c].clone()));
    }
    let v = vocab.len() as f64;
    let n = train.len() as f64;
    let mut log_likelihood = Vec::with_capacity(labels.len());
    for c in 0..labels.len() {
        let denom = totals[c] as f64 + v;
        log_likelihood.push(
            vocab
                .iter()
                .map(|&f| {
                    let k = counts[c].get(f).copied().unwrap_or(0) as f64;
                    (f.clone(), ((k + 1.0) / denom).ln())
                })
                .collect(),
        );
    }
    Ok(NaiveBayes {
        log_prior: docs.iter().map(|&d| (d as f64 / n).ln()).collect(),
        labels,
        log_likelihood,
    })
}

impl NaiveBayes {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Unnormalized log joint per label; features outside the training
    /// vocabulary are ignored.
    pub fn log_scores(&self, fv: &FeatureVector) -> Vec<(String, f64)> {
        self.labels
            .iter()
            .enumerate()
            .map(|(c, label)| {
                let mut score = self.log_prior[c];
                for (f, &n) in fv {
                    if let Some(ll) = self.log_likelihood[c].get(f) {
                        score += f64::from(n) * ll;
                    }
                }
                (label.clone(), score)
            })
            .collect()
    }

    /// Posterior probabilities per label.
    pub fn posteriors(&self, fv: &FeatureVector) -> Vec<(String, f64)> {
        let scores = self.log_scores(fv);
        let max = scores.iter().map(|(_, s)| *s).fold(f64::NEG_INFINITY, f64::max);
        let total: f64 = scores.iter().map(|(_, s)| (s - max).exp()).sum();
        scores.into_iter().map(|(l, s)| (l, (s - max).exp() / total)).collect()
    }

    /// Highest scoring label; ties go to the lexicographically smaller one.
    pub fn predict(&self, fv: &FeatureVector) -> String {
        argmax(self.log_scores(fv))
    }
}

pub fn predict_nb(model: &NaiveBayes, fv: &FeatureVector) -> String {
    model.predict(fv)
}

/// First strictly greatest score in label order.
pub(crate) fn argmax(scores: Vec<(String, f64)>) -> String {
    let mut best: Option<(String, f64)> = None;
    for (label, score) in scores {
        if best.as_ref().is_none_or(|(_, b)| score > *b) {
            best = Some((label, score));
        }
    }
    best.expect("at least one label").0
}
