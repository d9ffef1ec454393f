//! The victim boundary.
//!
//! Anything that maps a batch of strings to per-input score vectors (or to
//! output strings) can be attacked. Native desk-scale victims live in the
//! submodules.

pub mod bundled;
mod linear;
mod train;
mod translator;

pub use linear::{FeatureConfig, LinearTextClassifier, UNK_TOKEN};
pub use train::{fit, EpochMetrics, TrainConfig, Trainer};
pub use translator::DictionaryTranslator;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::text::AttackedText;

/// Classification or entailment model returning one probability vector per
/// input.
pub trait ClassifierModel: Send + Sync {
    fn id(&self) -> &str;

    fn num_labels(&self) -> usize;

    fn predict_proba(&self, texts: &[String]) -> Vec<Vec<f64>>;

    /// Gradient access, for models that offer it.
    fn white_box(&self) -> Option<&dyn WhiteBoxClassifier> {
        None
    }
}

/// First-order access to a classifier's attack loss.
pub trait WhiteBoxClassifier: Send + Sync {
    /// Vocabulary words ranked by the first-order increase in attack loss
    /// when they replace word `index`; the current word is excluded.
    fn word_swap_ranking(&self, text: &AttackedText, label: usize, index: usize) -> Vec<(String, f64)>;

    /// Per-word L1 norm of gradient × input.
    fn word_saliency(&self, text: &AttackedText, label: usize) -> Vec<f64>;
}

/// Sequence-to-sequence model such as a translator.
pub trait TextToTextModel: Send + Sync {
    fn id(&self) -> &str;

    fn generate(&self, texts: &[String]) -> Vec<String>;
}

/// A raw model output as consumed by goal functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelOutput {
    Scores(Vec<f64>),
    Text(String),
}

impl ModelOutput {
    pub fn scores(&self) -> Option<&[f64]> {
        match self {
            ModelOutput::Scores(s) => Some(s),
            ModelOutput::Text(_) => None,
        }
    }

    pub fn text(&self) -> Option<&str> {
        match self {
            ModelOutput::Text(t) => Some(t),
            ModelOutput::Scores(_) => None,
        }
    }

    /// Short human-readable form: predicted label for scores, the text itself
    /// otherwise.
    pub fn label_string(&self) -> String {
        match self {
            ModelOutput::Scores(s) => argmax(s).to_string(),
            ModelOutput::Text(t) => t.clone(),
        }
    }
}

/// Index of the largest score; the lowest index wins ties.
pub fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate() {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|z| (z - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

/// The model under attack.
#[derive(Clone)]
pub enum Victim {
    Classifier(Arc<dyn ClassifierModel>),
    TextToText(Arc<dyn TextToTextModel>),
}

impl Victim {
    pub fn classifier<M: ClassifierModel + 'static>(model: M) -> Self {
        Victim::Classifier(Arc::new(model))
    }

    pub fn text_to_text<M: TextToTextModel + 'static>(model: M) -> Self {
        Victim::TextToText(Arc::new(model))
    }

    pub fn id(&self) -> &str {
        match self {
            Victim::Classifier(m) => m.id(),
            Victim::TextToText(m) => m.id(),
        }
    }

    pub fn query(&self, texts: &[String]) -> Vec<ModelOutput> {
        match self {
            Victim::Classifier(m) => m.predict_proba(texts).into_iter().map(ModelOutput::Scores).collect(),
            Victim::TextToText(m) => m.generate(texts).into_iter().map(ModelOutput::Text).collect(),
        }
    }

    pub fn white_box(&self) -> Option<&dyn WhiteBoxClassifier> {
        match self {
            Victim::Classifier(m) => m.white_box(),
            Victim::TextToText(_) => None,
        }
    }
}

impl std::fmt::Debug for Victim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("Victim").field(&self.id()).finish()
    }
}

/// Wraps a classifier and counts every input it is asked to score.
pub struct CountingClassifier<M> {
    inner: M,
    calls: AtomicUsize,
}

impl<M: ClassifierModel> CountingClassifier<M> {
    pub fn new(inner: M) -> Self {
        CountingClassifier {
            inner,
            calls: AtomicUsize::new(0),
        }
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }

    pub fn reset(&self) {
        self.calls.store(0, Ordering::SeqCst);
    }
}

impl<M: ClassifierModel> ClassifierModel for CountingClassifier<M> {
    fn id(&self) -> &str {
        self.inner.id()
    }

    fn num_labels(&self) -> usize {
        self.inner.num_labels()
    }

    fn predict_proba(&self, texts: &[String]) -> Vec<Vec<f64>> {
        self.calls.fetch_add(texts.len(), Ordering::SeqCst);
        self.inner.predict_proba(texts)
    }

    fn white_box(&self) -> Option<&dyn WhiteBoxClassifier> {
        self.inner.white_box()
    }
}

impl<M: ClassifierModel> ClassifierModel for Arc<M> {
    fn id(&self) -> &str {
        (**self).id()
    }

    fn num_labels(&self) -> usize {
        (**self).num_labels()
    }

    fn predict_proba(&self, texts: &[String]) -> Vec<Vec<f64>> {
        (**self).predict_proba(texts)
    }

    fn white_box(&self) -> Option<&dyn WhiteBoxClassifier> {
        (**self).white_box()
    }
}
