use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{softmax, ClassifierModel, WhiteBoxClassifier};
use crate::error::{Error, Result};
use crate::text::{segment, AttackedText};

/// Reserved token that maps to an all-zero feature vector.
pub const UNK_TOKEN: &str = "unk";

const FILE_HEADER: &str = "advtext-linear v1";
const PARALLEL_BATCH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureConfig {
    /// Smallest and largest character n-gram length.
    pub ngram_range: (usize, usize),
    /// Number of hashed n-gram buckets; 0 leaves only bag-of-words features.
    pub hash_buckets: usize,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            ngram_range: (2, 4),
            hash_buckets: 4096,
        }
    }
}

impl FeatureConfig {
    pub fn bag_of_words() -> Self {
        FeatureConfig {
            ngram_range: (2, 4),
            hash_buckets: 0,
        }
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    id: String,
    labels: Vec<String>,
    features: FeatureConfig,
    vocab: Vec<String>,
    weights: Vec<f64>,
    bias: Vec<f64>,
}

/// Softmax classifier over bag-of-words and hashed character n-gram
/// features.
///
/// A text's feature vector is the sum of its words' feature vectors, which
/// makes the model exactly additive over words.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearTextClassifier {
    id: String,
    labels: Vec<String>,
    features: FeatureConfig,
    vocab: Vec<String>,
    vocab_index: HashMap<String, usize>,
    /// Feature-major: the logit weights of feature `f` are
    /// `weights[f * L .. (f + 1) * L]`.
    weights: Vec<f64>,
    bias: Vec<f64>,
}

impl LinearTextClassifier {
    /// Zero-weight model over the given vocabulary. Words are lowercased and
    /// deduplicated; the reserved unknown token is dropped.
    pub fn new(labels: Vec<String>, vocab: impl IntoIterator<Item = impl AsRef<str>>, features: FeatureConfig) -> Self {
        let mut words = Vec::new();
        let mut index = HashMap::new();
        for w in vocab {
            let w = w.as_ref().to_lowercase();
            if w.is_empty() || w == UNK_TOKEN || index.contains_key(&w) {
                continue;
            }
            index.insert(w.clone(), words.len());
            words.push(w);
        }
        let dim = words.len() + features.hash_buckets;
        let n = labels.len();
        LinearTextClassifier {
            id: "linear-bow".to_string(),
            labels,
            features,
            vocab: words,
            vocab_index: index,
            weights: vec![0.0; dim * n],
            bias: vec![0.0; n],
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn feature_config(&self) -> &FeatureConfig {
        &self.features
    }

    pub fn vocabulary(&self) -> &[String] {
        &self.vocab
    }

    pub fn in_vocabulary(&self, word: &str) -> bool {
        self.vocab_index.contains_key(&word.to_lowercase())
    }

    pub fn feature_dim(&self) -> usize {
        self.vocab.len() + self.features.hash_buckets
    }

    pub fn weight(&self, feature: usize, label: usize) -> f64 {
        self.weights[feature * self.labels.len() + label]
    }

    pub fn set_weight(&mut self, feature: usize, label: usize, value: f64) {
        let n = self.labels.len();
        self.weights[feature * n + label] = value;
    }

    /// Sets the bag-of-words weight of an in-vocabulary word.
    pub fn set_word_weight(&mut self, word: &str, label: usize, value: f64) -> Result<()> {
        let f = *self
            .vocab_index
            .get(&word.to_lowercase())
            .ok_or_else(|| Error::config(format!("`{word}` is not in the vocabulary")))?;
        self.set_weight(f, label, value);
        Ok(())
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    pub fn set_bias(&mut self, label: usize, value: f64) {
        self.bias[label] = value;
    }

    /// Sparse features of a single word, with repeats.
    pub fn word_features(&self, word: &str) -> Vec<(usize, f64)> {
        let w = word.to_lowercase();
        let mut out = Vec::new();
        if w == UNK_TOKEN {
            return out;
        }
        if let Some(&f) = self.vocab_index.get(&w) {
            out.push((f, 1.0));
        }
        let buckets = self.features.hash_buckets;
        if buckets > 0 {
            let padded: Vec<char> = std::iter::once('<').chain(w.chars()).chain(std::iter::once('>')).collect();
            let (lo, hi) = self.features.ngram_range;
            let mut buf = String::new();
            for n in lo.max(1)..=hi {
                for gram in padded.windows(n) {
                    buf.clear();
                    buf.extend(gram);
                    let b = (fnv1a(buf.as_bytes()) % buckets as u64) as usize;
                    out.push((self.vocab.len() + b, 1.0));
                }
            }
        }
        out
    }

    /// Sparse features of a whole text (the sum over its words).
    pub fn text_features(&self, text: &str) -> Vec<(usize, f64)> {
        segment(text).0.iter().flat_map(|w| self.word_features(w)).collect()
    }

    pub(crate) fn logits_of(&self, features: &[(usize, f64)]) -> Vec<f64> {
        let n = self.labels.len();
        let mut z = self.bias.clone();
        for &(f, v) in features {
            let row = &self.weights[f * n..(f + 1) * n];
            for (zk, wk) in z.iter_mut().zip(row) {
                *zk += wk * v;
            }
        }
        z
    }

    pub fn logits(&self, text: &str) -> Vec<f64> {
        self.logits_of(&self.text_features(text))
    }

    pub fn predict_one(&self, text: &str) -> Vec<f64> {
        softmax(&self.logits(text))
    }

    /// Margin loss the white-box swaps increase: the mean logit of the other
    /// labels minus the logit of `label`.
    pub fn attack_loss(&self, text: &str, label: usize) -> f64 {
        margin(&self.logits(text), label)
    }

    /// Gradient of [`Self::attack_loss`] with respect to the feature vector.
    fn loss_gradient(&self, label: usize) -> Vec<f64> {
        let n = self.labels.len();
        let others = (n - 1).max(1) as f64;
        self.weights
            .chunks(n)
            .map(|row| {
                let sum: f64 = row.iter().enumerate().filter(|(k, _)| *k != label).map(|(_, w)| w).sum();
                sum / others - row[label]
            })
            .collect()
    }

    pub fn accuracy(&self, data: &[(String, usize)]) -> f64 {
        if data.is_empty() {
            return 0.0;
        }
        let texts: Vec<String> = data.iter().map(|(t, _)| t.clone()).collect();
        let correct = self
            .predict_proba(&texts)
            .iter()
            .zip(data)
            .filter(|(p, (_, y))| super::argmax(p) == *y)
            .count();
        correct as f64 / data.len() as f64
    }

    pub(crate) fn weights_mut(&mut self) -> (&mut [f64], &mut [f64]) {
        (&mut self.weights, &mut self.bias)
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{FILE_HEADER}")?;
        let file = ModelFile {
            id: self.id.clone(),
            labels: self.labels.clone(),
            features: self.features.clone(),
            vocab: self.vocab.clone(),
            weights: self.weights.clone(),
            bias: self.bias.clone(),
        };
        serde_json::to_writer(&mut out, &file)?;
        writeln!(out)?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let f = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(f);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut reader = BufReader::new(std::fs::File::open(path)?);
        let mut header = String::new();
        reader.read_line(&mut header)?;
        if header.trim_end() != FILE_HEADER {
            return Err(Error::parse(path, 1, format!("expected header `{FILE_HEADER}`")));
        }
        let file: ModelFile =
            serde_json::from_reader(reader).map_err(|e| Error::parse(path, e.line() + 1, e.to_string()))?;
        let mut model = LinearTextClassifier::new(file.labels, &file.vocab, file.features);
        if model.vocab.len() != file.vocab.len()
            || file.weights.len() != model.weights.len()
            || file.bias.len() != model.bias.len()
        {
            return Err(Error::parse(path, 2, "weight shapes do not match vocabulary and labels"));
        }
        model.id = file.id;
        model.weights = file.weights;
        model.bias = file.bias;
        Ok(model)
    }
}

pub(crate) fn margin(logits: &[f64], label: usize) -> f64 {
    let others = (logits.len() - 1).max(1) as f64;
    let sum: f64 = logits.iter().enumerate().filter(|(k, _)| *k != label).map(|(_, z)| z).sum();
    sum / others - logits[label]
}

fn dot(grad: &[f64], features: &[(usize, f64)]) -> f64 {
    features.iter().map(|&(f, v)| grad[f] * v).sum()
}

impl ClassifierModel for LinearTextClassifier {
    fn id(&self) -> &str {
        &self.id
    }

    fn num_labels(&self) -> usize {
        self.labels.len()
    }

    fn predict_proba(&self, texts: &[String]) -> Vec<Vec<f64>> {
        if texts.len() >= PARALLEL_BATCH {
            texts.par_iter().map(|t| self.predict_one(t)).collect()
        } else {
            texts.iter().map(|t| self.predict_one(t)).collect()
        }
    }

    fn white_box(&self) -> Option<&dyn WhiteBoxClassifier> {
        Some(self)
    }
}

impl WhiteBoxClassifier for LinearTextClassifier {
    fn word_swap_ranking(&self, text: &AttackedText, label: usize, index: usize) -> Vec<(String, f64)> {
        let Some(word) = text.word(index) else {
            return Vec::new();
        };
        let current = word.to_lowercase();
        if !self.vocab_index.contains_key(&current) {
            return Vec::new();
        }
        let grad = self.loss_gradient(label);
        let base = dot(&grad, &self.word_features(&current));
        let mut ranking: Vec<(String, f64)> = self
            .vocab
            .iter()
            .filter(|w| **w != current)
            .map(|w| (w.clone(), dot(&grad, &self.word_features(w)) - base))
            .collect();
        ranking.sort_by(|a, b| b.1.total_cmp(&a.1));
        ranking
    }

    fn word_saliency(&self, text: &AttackedText, label: usize) -> Vec<f64> {
        let grad = self.loss_gradient(label);
        text.words()
            .iter()
            .map(|w| self.word_features(w).iter().map(|&(f, v)| (grad[f] * v).abs()).sum())
            .collect()
    }
}
