use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::features::{FeatureId, FeatureVector};
use super::nb::argmax;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams {
    pub epochs: usize,
    /// L2 regularization strength (lambda).
    pub regularization: f64,
    pub seed: u64,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            epochs: 20,
            regularization: 1e-3,
            seed: 42,
        }
    }
}

/// One-vs-rest linear SVM over L2-normalized features plus a bias input.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSvm {
    labels: Vec<String>,
    index: HashMap<FeatureId, usize>,
    /// One row per label; last column is the bias weight.
    weights: Vec<Vec<f64>>,
}

type Sparse = Vec<(usize, f64)>;

fn normalize(fv: &FeatureVector, index: &HashMap<FeatureId, usize>, bias: usize) -> Sparse {
    let mut x: Sparse = fv
        .iter()
        .filter_map(|(f, &n)| index.get(f).map(|&i| (i, f64::from(n))))
        .collect();
    let norm = x.iter().map(|(_, v)| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for (_, v) in &mut x {
            *v /= norm;
        }
    }
    x.push((bias, 1.0));
    x
}

/// Trains by seeded stochastic subgradient descent on the L2-regularized
/// hinge loss (step size `1 / (lambda t)`), one binary problem per label.
pub fn train_svm(train: &[(FeatureVector, String)], params: SvmParams) -> Result<LinearSvm> {
    if params.epochs == 0 || params.regularization <= 0.0 || !params.regularization.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "SVM needs epochs >= 1 and regularization > 0, got {} and {}",
            params.epochs, params.regularization
        )));
    }
    let labels: Vec<String> = train
        .iter()
        .map(|(_, l)| l.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if labels.len() < 2 {
        return Err(Error::Degenerate(format!(
            "SVM training needs at least two labels, found {}",
            labels.len()
        )));
    }
    let vocab: BTreeSet<&FeatureId> = train.iter().flat_map(|(fv, _)| fv.keys()).collect();
    let index: HashMap<FeatureId, usize> = vocab.into_iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    let dim = index.len() + 1;
    let xs: Vec<Sparse> = train.iter().map(|(fv, _)| normalize(fv, &index, dim - 1)).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut order: Vec<usize> = (0..train.len()).collect();
    let mut schedule = Vec::with_capacity(params.epochs * train.len());
    for _ in 0..params.epochs {
        order.shuffle(&mut rng);
        schedule.extend_from_slice(&order);
    }

    let lambda = params.regularization;
    let weights = labels
        .iter()
        .map(|label| {
            // w = scale * v keeps the shrink step O(1)
            let mut v = vec![0.0; dim];
            let mut scale = 1.0;
            for (t, &i) in schedule.iter().enumerate() {
                let t = (t + 1) as f64;
                let eta = 1.0 / (lambda * t);
                let y = if &train[i].1 == label { 1.0 } else { -1.0 };
                let margin = y * scale * xs[i].iter().map(|&(j, x)| v[j] * x).sum::<f64>();
                let shrink = 1.0 - eta * lambda;
                if shrink <= 0.0 {
                    v.iter_mut().for_each(|w| *w = 0.0);
                    scale = 1.0;
                } else {
                    scale *= shrink;
                }
                if margin < 1.0 {
                    for &(j, x) in &xs[i] {
                        v[j] += eta * y * x / scale;
                    }
                }
                if scale < 1e-9 {
                    v.iter_mut().for_each(|w| *w *= scale);
                    scale = 1.0;
                }
            }
            v.into_iter().map(|w| w * scale).collect()
        })
        .collect();
    Ok(LinearSvm { labels, index, weights })
}

impl LinearSvm {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn decision_values(&self, fv: &FeatureVector) -> Vec<(String, f64)> {
        let bias = self.weights[0].len() - 1;
        let x = normalize(fv, &self.index, bias);
        self.labels
            .iter()
            .zip(&self.weights)
            .map(|(l, w)| (l.clone(), x.iter().map(|&(j, v)| w[j] * v).sum()))
            .collect()
    }

    /// Highest decision value; ties go to the lexicographically smaller label.
    pub fn predict(&self, fv: &FeatureVector) -> String {
        argmax(self.decision_values(fv))
    }
}

pub fn predict_svm(model: &LinearSvm, fv: &FeatureVector) -> String {
    model.predict(fv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(items: &[(&str, u32)]) -> FeatureVector {
        items
            .iter()
            .map(|(w, n)| (FeatureId::Word(w.to_string()), *n))
            .collect()
    }

    #[test]
    fn separable_one_feature_classes() {
        let mut train = Vec::new();
        for n in 1..6 {
            train.push((fv(&[("left", n)]), "a".to_string()));
            train.push((fv(&[("right", n)]), "b".to_string()));
        }
        let model = train_svm(&train, SvmParams::default()).unwrap();
        assert!(train.iter().all(|(x, y)| &model.predict(x) == y));
    }

    #[test]
    fn deterministic_weights() {
        let train = vec![
            (fv(&[("a", 1), ("b", 2)]), "x".to_string()),
            (fv(&[("b", 1), ("c", 3)]), "y".to_string()),
            (fv(&[("c", 1), ("a", 1)]), "z".to_string()),
        ];
        let bits = |m: &LinearSvm| -> Vec<u64> { m.weights().iter().flatten().map(|w| w.to_bits()).collect() };
        let params = SvmParams {
            seed: 9,
            ..SvmParams::default()
        };
        assert_eq!(
            bits(&train_svm(&train, params).unwrap()),
            bits(&train_svm(&train, params).unwrap())
        );
    }

    #[test]
    fn two_point_margin() {
        // After normalization the points are e_a and e_b; the max-margin
        // separator is their bisector, so the nearer training point wins.
        let train = vec![(fv(&[("a", 1)]), "p".to_string()), (fv(&[("b", 1)]), "n".to_string())];
        let model = train_svm(&train, SvmParams::default()).unwrap();
        for a in 0..6u32 {
            for b in 0..6u32 {
                if a == b {
                    continue;
                }
                let x = fv(&[("a", a), ("b", b)]
                    .into_iter()
                    .filter(|(_, n)| *n > 0)
                    .collect::<Vec<_>>());
                let analytic = if a > b { "p" } else { "n" };
                assert_eq!(model.predict(&x), analytic, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        let one = vec![(fv(&[("a", 1)]), "x".to_string())];
        assert!(matches!(
            train_svm(&one, SvmParams::default()),
            Err(Error::Degenerate(_))
        ));
        let two = vec![(fv(&[("a", 1)]), "x".to_string()), (fv(&[("b", 1)]), "y".to_string())];
        assert!(train_svm(
            &two,
            SvmParams {
                epochs: 0,
                ..SvmParams::default()
            }
        )
        .is_err());
        assert!(train_svm(
            &two,
            SvmParams {
                regularization: 0.0,
                ..SvmParams::default()
            }
        )
        .is_err());
    }

    #[test]
    fn empty_vector_uses_bias_only() {
        let two = vec![(fv(&[("a", 1)]), "x".to_string()), (fv(&[("b", 1)]), "y".to_string())];
        let model = train_svm(&two, SvmParams::default()).unwrap();
        let _ = model.predict(&FeatureVector::new());
        assert_eq!(model.predict(&fv(&[("a", 4)])), "x");
    }
}
