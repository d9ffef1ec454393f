use std::sync::Arc;

use super::Constraint;
use crate::component::Component;
use crate::metrics::{bleu, chrf, cosine_similarity, levenshtein};
use crate::resources::EmbeddingStore;
use crate::text::{AttackedText, PosLexicon, PosTag};

/// `(reference word, candidate word)` for every word substituted in place.
fn substitutions<'a>(reference: &'a AttackedText, candidate: &'a AttackedText) -> Vec<(&'a str, &'a str)> {
    AttackedText::diff(reference, candidate)
        .into_iter()
        .filter_map(|c| Some((c.reference?.1, c.candidate?.1)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct LevenshteinEditDistance {
    pub max_edit_distance: usize,
    pub compare_against_original: bool,
}

impl Constraint for LevenshteinEditDistance {
    fn describe(&self) -> Component {
        Component::new("LevenshteinEditDistance")
            .with("max_edit_distance", self.max_edit_distance)
            .with("compare_against_original", self.compare_against_original)
    }

    fn check(&self, reference: &AttackedText, candidate: &AttackedText) -> bool {
        levenshtein(&reference.printable(), &candidate.printable()) <= self.max_edit_distance
    }

    fn compare_against_original(&self) -> bool {
        self.compare_against_original
    }
}

/// Bounds the number of words that differ from the reference, as a count,
/// as a fraction of the reference length, or both.
#[derive(Clone, Debug)]
pub struct MaxWordsPerturbed {
    pub max_num_words: Option<usize>,
    pub max_percent: Option<f64>,
    pub compare_against_original: bool,
}

impl Constraint for MaxWordsPerturbed {
    fn describe(&self) -> Component {
        let mut c = Component::new("MaxWordsPerturbed");
        if let Some(n) = self.max_num_words {
            c = c.with("max_num_words", n);
        }
        if let Some(p) = self.max_percent {
            c = c.with("max_percent", p);
        }
        c.with("compare_against_original", self.compare_against_original)
    }

    fn check(&self, reference: &AttackedText, candidate: &AttackedText) -> bool {
        let changed = AttackedText::words_changed(reference, candidate);
        if self.max_num_words.is_some_and(|n| changed > n) {
            return false;
        }
        if let Some(p) = self.max_percent {
            let total = reference.num_words();
            let ratio = if total == 0 {
                if changed == 0 { 0.0 } else { f64::INFINITY }
            } else {
                changed as f64 / total as f64
            };
            if ratio > p {
                return false;
            }
        }
        true
    }

    fn compare_against_original(&self) -> bool {
        self.compare_against_original
    }
}

/// `1 − BLEU(candidate, reference)` must not exceed the bound.
#[derive(Clone, Debug)]
pub struct Bleu {
    pub max_bleu_diff: f64,
    pub compare_against_original: bool,
}

impl Constraint for Bleu {
    fn describe(&self) -> Component {
        Component::new("BLEU")
            .with("max_bleu_diff", self.max_bleu_diff)
            .with("compare_against_original", self.compare_against_original)
    }

    fn check(&self, reference: &AttackedText, candidate: &AttackedText) -> bool {
        1.0 - bleu(&candidate.printable(), &reference.printable()) <= self.max_bleu_diff
    }

    fn compare_against_original(&self) -> bool {
        self.compare_against_original
    }
}

/// `1 − chrF(candidate, reference)` must not exceed the bound.
#[derive(Clone, Debug)]
pub struct Chrf {
    pub max_chrf_diff: f64,
    pub compare_against_original: bool,
}

impl Constraint for Chrf {
    fn describe(&self) -> Component {
        Component::new("chrF")
            .with("max_chrf_diff", self.max_chrf_diff)
            .with("compare_against_original", self.compare_against_original)
    }

    fn check(&self, reference: &AttackedText, candidate: &AttackedText) -> bool {
        1.0 - chrf(&candidate.printable(), &reference.printable()) <= self.max_chrf_diff
    }

    fn compare_against_original(&self) -> bool {
        self.compare_against_original
    }
}

/// Substituted words keep their part of speech.
#[derive(Clone, Debug)]
pub struct PartOfSpeech {
    pub lexicon: Arc<PosLexicon>,
    pub allow_verb_noun_swap: bool,
    pub compare_against_original: bool,
}

impl PartOfSpeech {
    fn compatible(&self, a: PosTag, b: PosTag) -> bool {
        a == b
            || (self.allow_verb_noun_swap
                && matches!((a, b), (PosTag::Noun, PosTag::Verb) | (PosTag::Verb, PosTag::Noun)))
    }
}

impl Constraint for PartOfSpeech {
    fn describe(&self) -> Component {
        Component::new("PartOfSpeech")
            .with("tagger_type", "lexicon")
            .with("tagset", "universal")
            .with("allow_verb_noun_swap", self.allow_verb_noun_swap)
            .with("compare_against_original", self.compare_against_original)
    }

    fn check(&self, reference: &AttackedText, candidate: &AttackedText) -> bool {
        substitutions(reference, candidate)
            .into_iter()
            .all(|(a, b)| self.compatible(self.lexicon.tag(a), self.lexicon.tag(b)))
    }

    fn compare_against_original(&self) -> bool {
        self.compare_against_original
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EmbeddingBound {
    MinCosSim(f64),
    MaxMseDist(f64),
}

/// Substituted words stay close in embedding space.
#[derive(Clone, Debug)]
pub struct WordEmbeddingDistance {
    pub embeddings: Arc<EmbeddingStore>,
    pub bound: EmbeddingBound,
    pub cased: bool,
    pub include_unknown_words: bool,
    pub compare_against_original: bool,
}

impl WordEmbeddingDistance {
    fn pair_ok(&self, a: &str, b: &str) -> bool {
        let (a, b) = if self.cased {
            (a.to_string(), b.to_string())
        } else {
            (a.to_lowercase(), b.to_lowercase())
        };
        if a == b {
            return true;
        }
        let (Some(u), Some(v)) = (self.embeddings.vector(&a), self.embeddings.vector(&b)) else {
            return self.include_unknown_words;
        };
        match self.bound {
            EmbeddingBound::MinCosSim(min) => cosine_similarity(u, v) >= min,
            EmbeddingBound::MaxMseDist(max) => {
                let mse = u.iter().zip(v).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() / u.len().max(1) as f64;
                mse <= max
            }
        }
    }
}

impl Constraint for WordEmbeddingDistance {
    fn describe(&self) -> Component {
        let c = Component::new("WordEmbeddingDistance").with("embedding_type", self.embeddings.name());
        let c = match self.bound {
            EmbeddingBound::MinCosSim(x) => c.with("min_cos_sim", x),
            EmbeddingBound::MaxMseDist(x) => c.with("max_mse_dist", x),
        };
        c.with("cased", self.cased)
            .with("include_unknown_words", self.include_unknown_words)
            .with("compare_against_original", self.compare_against_original)
    }

    fn check(&self, reference: &AttackedText, candidate: &AttackedText) -> bool {
        substitutions(reference, candidate).into_iter().all(|(a, b)| self.pair_ok(a, b))
    }

    fn compare_against_original(&self) -> bool {
        self.compare_against_original
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThoughtVectorMetric {
    /// Negative Euclidean distance between the two sentence vectors.
    MaxEuclidean,
    Cosine,
}

impl ThoughtVectorMetric {
    pub fn as_str(self) -> &'static str {
        match self {
            ThoughtVectorMetric::MaxEuclidean => "max_euclidean",
            ThoughtVectorMetric::Cosine => "cosine",
        }
    }
}

/// Compares sentence vectors, each the mean embedding of the text's known
/// words. Passes when the metric is at least `threshold`.
#[derive(Clone, Debug)]
pub struct ThoughtVector {
    pub embeddings: Arc<EmbeddingStore>,
    pub metric: ThoughtVectorMetric,
    pub threshold: f64,
    pub compare_against_original: bool,
}

impl ThoughtVector {
    pub fn sentence_vector(&self, text: &AttackedText) -> Vec<f64> {
        let mut sum = vec![0.0; self.embeddings.dim()];
        let mut n = 0usize;
        for w in text.words() {
            if let Some(v) = self.embeddings.vector(&w.to_lowercase()) {
                for (s, x) in sum.iter_mut().zip(v) {
                    *s += x;
                }
                n += 1;
            }
        }
        if n > 0 {
            for s in &mut sum {
                *s /= n as f64;
            }
        }
        sum
    }

    pub fn measure(&self, reference: &AttackedText, candidate: &AttackedText) -> f64 {
        let (a, b) = (self.sentence_vector(reference), self.sentence_vector(candidate));
        match self.metric {
            ThoughtVectorMetric::MaxEuclidean => -a.iter().zip(&b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt(),
            ThoughtVectorMetric::Cosine => {
                if a == b {
                    1.0
                } else {
                    cosine_similarity(&a, &b)
                }
            }
        }
    }
}

impl Constraint for ThoughtVector {
    fn describe(&self) -> Component {
        Component::new("ThoughtVector")
            .with("embedding_type", self.embeddings.name())
            .with("metric", self.metric.as_str())
            .with("threshold", self.threshold)
            .with("window_size", f64::INFINITY)
            .with("skip_text_shorter_than_window", false)
            .with("compare_against_original", self.compare_against_original)
    }

    fn check(&self, reference: &AttackedText, candidate: &AttackedText) -> bool {
        self.measure(reference, candidate) >= self.threshold
    }

    fn compare_against_original(&self) -> bool {
        self.compare_against_original
    }
}
