use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{argmax, softmax, FeatureConfig, LinearTextClassifier};
use crate::error::{Error, Result};
use crate::text::segment;

#[derive(Clone, Debug, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub seed: u64,
    /// Stop after this many epochs without a dev-accuracy improvement and
    /// keep the best weights. Ignored without a dev set.
    pub early_stopping_patience: Option<usize>,
    pub features: FeatureConfig,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 20,
            learning_rate: 0.1,
            batch_size: 32,
            seed: 0,
            early_stopping_patience: None,
            features: FeatureConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpochMetrics {
    pub epoch: usize,
    pub train_loss: f64,
    pub train_accuracy: f64,
    pub dev_accuracy: Option<f64>,
}

/// Epoch-at-a-time trainer, so callers can swap the training set between
/// epochs.
pub struct Trainer {
    model: LinearTextClassifier,
    config: TrainConfig,
    rng: ChaCha8Rng,
    epochs_run: usize,
}

impl Trainer {
    /// Builds the vocabulary from `vocab_texts` (first-occurrence order) and
    /// starts from zero weights.
    pub fn new<'a>(
        labels: Vec<String>,
        vocab_texts: impl IntoIterator<Item = &'a str>,
        config: TrainConfig,
    ) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::config("training needs at least two labels"));
        }
        if config.batch_size == 0 {
            return Err(Error::config("batch size must be positive"));
        }
        let words = vocab_texts.into_iter().flat_map(|t| segment(t).0);
        let model = LinearTextClassifier::new(labels, words, config.features.clone());
        Ok(Trainer {
            model,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            config,
            epochs_run: 0,
        })
    }

    pub fn model(&self) -> &LinearTextClassifier {
        &self.model
    }

    pub fn into_model(self) -> LinearTextClassifier {
        self.model
    }

    pub fn epochs_run(&self) -> usize {
        self.epochs_run
    }

    /// One shuffled pass of mini-batch gradient descent on cross-entropy.
    /// Returns the mean loss and accuracy seen during the pass.
    pub fn run_epoch(&mut self, data: &[(String, usize)]) -> Result<(f64, f64)> {
        if data.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let n_labels = self.model.labels().len();
        if let Some((_, y)) = data.iter().find(|(_, y)| *y >= n_labels) {
            return Err(Error::config(format!("label {y} out of range for {n_labels} labels")));
        }
        let mut order: Vec<usize> = (0..data.len()).collect();
        order.shuffle(&mut self.rng);
        let lr = self.config.learning_rate;
        let (mut loss, mut correct) = (0.0, 0usize);
        for batch in order.chunks(self.config.batch_size) {
            let scale = lr / batch.len() as f64;
            let steps: Vec<(Vec<(usize, f64)>, Vec<f64>)> = batch
                .iter()
                .map(|&i| {
                    let (text, y) = &data[i];
                    let x = self.model.text_features(text);
                    let p = softmax(&self.model.logits_of(&x));
                    loss -= p[*y].max(1e-300).ln();
                    if argmax(&p) == *y {
                        correct += 1;
                    }
                    let delta: Vec<f64> =
                        p.iter().enumerate().map(|(k, pk)| pk - if k == *y { 1.0 } else { 0.0 }).collect();
                    (x, delta)
                })
                .collect();
            let (weights, bias) = self.model.weights_mut();
            for (x, delta) in &steps {
                for &(f, v) in x {
                    let row = &mut weights[f * n_labels..(f + 1) * n_labels];
                    for (w, d) in row.iter_mut().zip(delta) {
                        *w -= scale * d * v;
                    }
                }
                for (b, d) in bias.iter_mut().zip(delta) {
                    *b -= scale * d;
                }
            }
        }
        self.epochs_run += 1;
        Ok((loss / data.len() as f64, correct as f64 / data.len() as f64))
    }
}

/// Trains a fresh model on `train`, reporting per-epoch metrics.
pub fn fit(
    train: &[(String, usize)],
    dev: Option<&[(String, usize)]>,
    labels: Vec<String>,
    config: &TrainConfig,
) -> Result<(LinearTextClassifier, Vec<EpochMetrics>)> {
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut trainer = Trainer::new(labels, train.iter().map(|(t, _)| t.as_str()), config.clone())?;
    let mut history = Vec::new();
    let mut best: Option<(f64, LinearTextClassifier)> = None;
    let mut since_best = 0;
    for epoch in 1..=config.epochs {
        let (train_loss, train_accuracy) = trainer.run_epoch(train)?;
        let dev_accuracy = dev.map(|d| trainer.model().accuracy(d));
        history.push(EpochMetrics {
            epoch,
            train_loss,
            train_accuracy,
            dev_accuracy,
        });
        if let (Some(patience), Some(acc)) = (config.early_stopping_patience, dev_accuracy) {
            if best.as_ref().map_or(true, |(b, _)| acc > *b) {
                best = Some((acc, trainer.model().clone()));
                since_best = 0;
            } else {
                since_best += 1;
                if since_best >= patience {
                    break;
                }
            }
        }
    }
    let model = match best {
        Some((_, m)) => m,
        None => trainer.into_model(),
    };
    Ok((model, history))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ClassifierModel;

    fn toy() -> Vec<(String, usize)> {
        vec![
            ("great fun".into(), 1),
            ("lovely film".into(), 1),
            ("awful mess".into(), 0),
            ("dull film".into(), 0),
        ]
    }

    fn labels() -> Vec<String> {
        vec!["0".into(), "1".into()]
    }

    #[test]
    fn separable_toy_set_is_learned() {
        let cfg = TrainConfig {
            epochs: 50,
            batch_size: 2,
            learning_rate: 0.5,
            ..TrainConfig::default()
        };
        let (m, history) = fit(&toy(), None, labels(), &cfg).unwrap();
        assert_eq!(history.len(), 50);
        assert_eq!(m.accuracy(&toy()), 1.0);
    }

    #[test]
    fn same_seed_same_weights() {
        let cfg = TrainConfig {
            epochs: 5,
            seed: 9,
            batch_size: 3,
            ..TrainConfig::default()
        };
        let a = fit(&toy(), None, labels(), &cfg).unwrap().0;
        let b = fit(&toy(), None, labels(), &cfg).unwrap().0;
        assert_eq!(a, b);
    }

    #[test]
    fn zero_epochs_gives_uniform_model() {
        let cfg = TrainConfig {
            epochs: 0,
            ..TrainConfig::default()
        };
        let (m, history) = fit(&toy(), None, labels(), &cfg).unwrap();
        assert!(history.is_empty());
        assert_eq!(m.predict_proba(&["great fun".to_string()]), [vec![0.5, 0.5]]);
    }

    #[test]
    fn empty_dataset_and_single_label_are_rejected() {
        let cfg = TrainConfig::default();
        assert!(matches!(fit(&[], None, labels(), &cfg), Err(Error::EmptyDataset)));
        assert!(matches!(fit(&toy(), None, vec!["x".into()], &cfg), Err(Error::Config(_))));
    }

    #[test]
    fn early_stopping_reports_dev_accuracy() {
        let cfg = TrainConfig {
            epochs: 30,
            early_stopping_patience: Some(2),
            learning_rate: 0.5,
            batch_size: 2,
            ..TrainConfig::default()
        };
        let (m, history) = fit(&toy(), Some(&toy()), labels(), &cfg).unwrap();
        assert!(history.len() < 30);
        assert!(history.iter().all(|h| h.dev_accuracy.is_some()));
        assert_eq!(m.accuracy(&toy()), 1.0);
    }
}
