//! Data augmentation with attack transformations.
//!
//! Each augmented copy perturbs `max(1, round(pct × words))` distinct
//! allowed words. Every edit must pass the augmenter's constraints against
//! the source text, so outputs always satisfy them.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constraints::{self, ConstraintItem, MinWordLength, RepeatModification, StopwordModification};
use crate::constraints::{EmbeddingBound, WordEmbeddingDistance};
use crate::dataset::Example;
use crate::error::{Error, Result};
use crate::resources::Resources;
use crate::text::AttackedText;
use crate::transform::{
    CharEdit, CharacterSwap, CompositeTransformation, LexiconSwap, Transformation, TransformContext,
    WordDeletion, WordInnerSwapRandom, WordInsertionRandomSynonym, WordSwapEmbedding,
};

pub const AUGMENT_RECIPES: &[&str] = &["charswap", "eda", "embedding"];

/// Attempts per requested output before giving up on it.
pub const DEFAULT_RETRIES: usize = 20;

/// Reads a `--pct-words-to-swap` value: above 1 it is a percentage.
pub fn normalize_pct(value: f64) -> f64 {
    if value > 1.0 {
        value / 100.0
    } else {
        value
    }
}

#[derive(Clone, Debug)]
pub struct Augmenter {
    /// Edit operations, used in rotation from one swap to the next.
    operations: Vec<Arc<dyn Transformation>>,
    constraints: Vec<ConstraintItem>,
    pct_words_to_swap: f64,
    transformations_per_example: usize,
    max_retries: usize,
}

impl Augmenter {
    pub fn new(
        operations: Vec<Arc<dyn Transformation>>,
        constraints: Vec<ConstraintItem>,
        pct_words_to_swap: f64,
        transformations_per_example: usize,
    ) -> Result<Self> {
        if operations.is_empty() {
            return Err(Error::config("an augmenter needs at least one transformation"));
        }
        if !(pct_words_to_swap > 0.0 && pct_words_to_swap <= 1.0) {
            return Err(Error::config(format!(
                "pct_words_to_swap must be in (0, 1], got {pct_words_to_swap}"
            )));
        }
        if transformations_per_example == 0 {
            return Err(Error::config("transformations_per_example must be positive"));
        }
        Ok(Augmenter {
            operations,
            constraints,
            pct_words_to_swap,
            transformations_per_example,
            max_retries: DEFAULT_RETRIES,
        })
    }

    /// `embedding`, `eda` or `charswap`.
    pub fn recipe(name: &str, res: &Resources, pct_words_to_swap: f64, transformations_per_example: usize) -> Result<Self> {
        let repeat = ConstraintItem::pre(RepeatModification);
        let stopword = ConstraintItem::pre(StopwordModification {
            stopwords: res.stopwords.clone(),
        });
        let (ops, constraints): (Vec<Arc<dyn Transformation>>, Vec<ConstraintItem>) = match name {
            "embedding" => (
                vec![Arc::new(WordSwapEmbedding {
                    embeddings: res.embeddings.clone(),
                    max_candidates: 50,
                })],
                vec![
                    ConstraintItem::pairwise(WordEmbeddingDistance {
                        embeddings: res.embeddings.clone(),
                        bound: EmbeddingBound::MinCosSim(0.8),
                        cased: false,
                        include_unknown_words: true,
                        compare_against_original: true,
                    }),
                    stopword,
                    repeat,
                ],
            ),
            "eda" => (
                vec![
                    Arc::new(LexiconSwap::wordnet(res.thesaurus.clone())),
                    Arc::new(WordInsertionRandomSynonym {
                        lexicon: res.thesaurus.clone(),
                    }),
                    Arc::new(WordInnerSwapRandom),
                    Arc::new(WordDeletion),
                ],
                vec![repeat, stopword],
            ),
            "charswap" => (
                vec![Arc::new(CompositeTransformation::new(
                    [CharEdit::NeighborSwap, CharEdit::Substitute, CharEdit::Delete, CharEdit::Insert]
                        .into_iter()
                        .map(|e| Arc::new(CharacterSwap::new(e, true, res.char_maps.clone())) as Arc<dyn Transformation>)
                        .collect(),
                ))],
                vec![repeat, stopword, ConstraintItem::pre(MinWordLength { min_length: 2 })],
            ),
            other => return Err(Error::UnknownRecipe(other.to_string())),
        };
        Self::new(ops, constraints, pct_words_to_swap, transformations_per_example)
    }

    pub fn with_max_retries(mut self, retries: usize) -> Self {
        self.max_retries = retries.max(1);
        self
    }

    pub fn pct_words_to_swap(&self) -> f64 {
        self.pct_words_to_swap
    }

    pub fn transformations_per_example(&self) -> usize {
        self.transformations_per_example
    }

    /// Words to perturb in a text of `num_words` words.
    pub fn words_to_swap(&self, num_words: usize) -> usize {
        ((self.pct_words_to_swap * num_words as f64).round() as usize).max(1)
    }

    /// Up to `transformations_per_example` distinct perturbed copies of `text`.
    pub fn augment(&self, text: &str, seed: u64) -> Result<Vec<String>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.augment_with(&AttackedText::new(text), &mut rng)
    }

    /// Like [`Augmenter::augment`], drawing from random stream `stream` of
    /// `seed` so rows of a corpus get independent draws.
    pub fn augment_indexed(&self, text: &str, seed: u64, stream: u64) -> Result<Vec<String>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        self.augment_with(&AttackedText::new(text), &mut rng)
    }

    pub fn augment_with(&self, source: &AttackedText, rng: &mut ChaCha8Rng) -> Result<Vec<String>> {
        if source.num_words() == 0 {
            return Ok(Vec::new());
        }
        let n_swap = self.words_to_swap(source.num_words());
        let mut seen = HashSet::from([source.printable()]);
        let mut out = Vec::new();
        for k in 0..self.transformations_per_example {
            for _ in 0..self.max_retries {
                if let Some(t) = self.one_copy(source, n_swap, k, rng)? {
                    let p = t.printable();
                    if seen.insert(p.clone()) {
                        out.push(p);
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    /// One perturbed copy, or `None` if no swap could be made. Operations
    /// are tried in rotation starting at `start`; one with no valid
    /// candidate at an index is skipped in favour of the next.
    fn one_copy(&self, source: &AttackedText, n_swap: usize, start: usize, rng: &mut ChaCha8Rng) -> Result<Option<AttackedText>> {
        let mut ids: Vec<usize> = constraints::allowed_indices(&self.constraints, source)
            .into_iter()
            .filter_map(|i| source.word_id(i))
            .collect();
        ids.shuffle(rng);
        let mut current = source.clone();
        let mut swaps = 0;
        let mut step = start;
        for id in ids {
            if swaps == n_swap {
                break;
            }
            let Some(index) = current.index_of_id(id) else { continue };
            if !constraints::allowed_indices(&self.constraints, &current).contains(&index) {
                continue;
            }
            for attempt in 0..self.operations.len() {
                let op = &self.operations[(step + attempt) % self.operations.len()];
                let mut ctx = TransformContext {
                    rng,
                    victim: None,
                    label: None,
                };
                let cands: Vec<AttackedText> = op
                    .generate(&current, &BTreeSet::from([index]), &mut ctx)?
                    .into_iter()
                    .filter(|c| constraints::check_all(&self.constraints, source, source, c))
                    .collect();
                if let Some(choice) = cands.choose(rng) {
                    current = choice.clone();
                    swaps += 1;
                    step += attempt + 1;
                    break;
                }
            }
        }
        Ok((swaps > 0).then_some(current))
    }

    /// Augments every single-input example. Labels are copied. The source
    /// example is kept first unless `exclude_original` is set.
    pub fn augment_dataset(&self, examples: &[Example], seed: u64, exclude_original: bool) -> Result<Vec<Example>> {
        let per: Vec<Vec<Example>> = examples
            .par_iter()
            .enumerate()
            .map(|(i, e)| {
                let [(column, text)] = e.inputs.as_slice() else {
                    return Err(Error::config("augmentation needs single-input examples"));
                };
                let mut out = Vec::new();
                if !exclude_original {
                    out.push(e.clone());
                }
                for t in self.augment_indexed(text, seed, i as u64)? {
                    if exclude_original && t == *text {
                        continue;
                    }
                    out.push(Example {
                        inputs: vec![(column.clone(), t)],
                        label: e.label,
                        reference: e.reference.clone(),
                    });
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(per.into_iter().flatten().collect())
    }
}
