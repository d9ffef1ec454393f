//! Candidate generators.
//!
//! A transformation maps a text and a set of modifiable word indices to
//! perturbed copies of the text. Outputs are deduplicated by printable text
//! and never include the input itself.

mod chars;
mod eda;
mod word_swap;

pub use chars::{CharEdit, CharacterSwap};
pub use eda::{WordInnerSwapRandom, WordInsertionRandomSynonym};
pub use word_swap::{
    LexiconSwap, WordDeletion, WordSwapEmbedding, WordSwapGradientBased, WordSwapInflections,
};

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::component::Component;
use crate::error::Result;
use crate::model::Victim;
use crate::text::AttackedText;

/// Per-call state a transformation may draw on.
pub struct TransformContext<'a> {
    pub rng: &'a mut ChaCha8Rng,
    /// Needed only by white-box transformations.
    pub victim: Option<&'a Victim>,
    /// Label whose loss white-box transformations increase.
    pub label: Option<usize>,
}

pub trait Transformation: Send + Sync + fmt::Debug {
    fn describe(&self) -> Component;

    fn generate(
        &self,
        text: &AttackedText,
        indices: &BTreeSet<usize>,
        ctx: &mut TransformContext<'_>,
    ) -> Result<Vec<AttackedText>>;

    fn is_black_box(&self) -> bool {
        true
    }

    /// True when every output has the same words count as the input and
    /// differs only by in-place substitutions.
    fn substitutes_only(&self) -> bool {
        true
    }
}

/// Drops the input and repeated printable texts, keeping first occurrences.
pub fn dedup(input: &AttackedText, candidates: Vec<AttackedText>) -> Vec<AttackedText> {
    let mut seen = HashSet::from([input.printable()]);
    candidates.into_iter().filter(|c| seen.insert(c.printable())).collect()
}

/// Builds one candidate per `(index, replacement word)` produced by
/// `words_for`, skipping replacements identical to the current word.
pub(crate) fn swap_each<F>(text: &AttackedText, indices: &BTreeSet<usize>, mut words_for: F) -> Result<Vec<AttackedText>>
where
    F: FnMut(usize, &str) -> Result<Vec<String>>,
{
    let mut out = Vec::new();
    for &i in indices {
        let Some(word) = text.word(i) else { continue };
        for replacement in words_for(i, word)? {
            if replacement.is_empty() || replacement == word {
                continue;
            }
            out.push(text.replace_word_at(i, &replacement)?);
        }
    }
    Ok(dedup(text, out))
}

/// Union of several transformations' outputs, in member order.
#[derive(Clone, Debug, Default)]
pub struct CompositeTransformation {
    pub members: Vec<Arc<dyn Transformation>>,
}

impl CompositeTransformation {
    pub fn new(members: Vec<Arc<dyn Transformation>>) -> Self {
        CompositeTransformation { members }
    }
}

impl Transformation for CompositeTransformation {
    fn describe(&self) -> Component {
        self.members
            .iter()
            .fold(Component::new("CompositeTransformation"), |c, m| c.with_child(m.describe()))
    }

    fn generate(
        &self,
        text: &AttackedText,
        indices: &BTreeSet<usize>,
        ctx: &mut TransformContext<'_>,
    ) -> Result<Vec<AttackedText>> {
        let mut all = Vec::new();
        for m in &self.members {
            all.extend(m.generate(text, indices, ctx)?);
        }
        Ok(dedup(text, all))
    }

    fn is_black_box(&self) -> bool {
        self.members.iter().all(|m| m.is_black_box())
    }

    fn substitutes_only(&self) -> bool {
        self.members.iter().all(|m| m.substitutes_only())
    }
}
