use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::features::FeatureVector;
use super::nb::train_nb_with_labels;
use super::svm::{train_svm, SvmParams};
use crate::error::{Error, Result};

pub type Example = (FeatureVector, String);

/// Anything that can be trained on one split and label another.
pub trait Classifier: Sync {
    fn name(&self) -> String;

    /// Trains on `train` and predicts a label for each of `test`.
    /// `labels` is the full sorted label set of the data.
    fn fit_predict(&self, train: &[Example], test: &[&FeatureVector], labels: &[String]) -> Result<Vec<String>>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NaiveBayesClassifier;

impl Classifier for NaiveBayesClassifier {
    fn name(&self) -> String {
        "NaiveBayes".into()
    }

    fn fit_predict(&self, train: &[Example], test: &[&FeatureVector], labels: &[String]) -> Result<Vec<String>> {
        let model = train_nb_with_labels(train, labels)?;
        Ok(test.iter().map(|fv| model.predict(fv)).collect())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SvmClassifier(pub SvmParams);

impl Classifier for SvmClassifier {
    fn name(&self) -> String {
        "SVM".into()
    }

    fn fit_predict(&self, train: &[Example], test: &[&FeatureVector], _labels: &[String]) -> Result<Vec<String>> {
        let model = train_svm(train, self.0)?;
        Ok(test.iter().map(|fv| model.predict(fv)).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvResult {
    pub fold_accuracies: Vec<f64>,
    pub mean: f64,
}

/// Fold index per example: within each label the examples are shuffled
/// with the seeded generator and dealt round-robin into `k` folds.
pub fn assign_folds(labels: &[String], k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 folds, got {k}")));
    }
    let mut by_label: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        by_label.entry(l).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![0; labels.len()];
    for (label, mut members) in by_label {
        if members.len() < k {
            return Err(Error::TooFewExamples {
                label: label.to_string(),
                count: members.len(),
                folds: k,
            });
        }
        members.shuffle(&mut rng);
        for (pos, i) in members.into_iter().enumerate() {
            folds[i] = pos % k;
        }
    }
    Ok(folds)
}

/// Stratified k-fold cross-validation. Folds run in parallel; each
/// training run is sequential, so results do not depend on scheduling.
pub fn cross_validate(examples: &[Example], classifier: &dyn Classifier, k: usize, seed: u64) -> Result<CvResult> {
    let labels: Vec<String> = examples.iter().map(|(_, l)| l.clone()).collect();
    let folds = assign_folds(&labels, k, seed)?;
    let mut label_set = labels.clone();
    label_set.sort();
    label_set.dedup();
    let fold_accuracies = (0..k)
        .into_par_iter()
        .map(|fold| {
            let train: Vec<Example> = examples
                .iter()
                .zip(&folds)
                .filter(|(_, &f)| f != fold)
                .map(|(e, _)| e.clone())
                .collect();
            let test: Vec<&Example> = examples
                .iter()
                .zip(&folds)
                .filter(|(_, &f)| f == fold)
                .map(|(e, _)| e)
                .collect();
            let inputs: Vec<&FeatureVector> = test.iter().map(|(fv, _)| fv).collect();
            let predicted = classifier.fit_predict(&train, &inputs, &label_set)?;
            let hits = predicted.iter().zip(&test).filter(|(p, (_, gold))| *p == gold).count();
            Ok(hits as f64 / test.len() as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mean = fold_accuracies.iter().sum::<f64>() / k as f64;
    Ok(CvResult { fold_accuracies, mean })
}
