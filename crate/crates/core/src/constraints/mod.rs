//! Validity checks on candidate perturbations.
//!
//! Pre-transformation constraints narrow the word indices a transformation
//! may touch. Pairwise constraints compare a candidate to a reference text,
//! which is either the original input or the text the candidate was derived
//! from.

mod pairwise;
mod pre;

pub use pairwise::{
    Bleu, Chrf, EmbeddingBound, LevenshteinEditDistance, MaxWordsPerturbed, PartOfSpeech, ThoughtVector, ThoughtVectorMetric,
    WordEmbeddingDistance,
};
pub use pre::{
    InputColumnModification, MaxWordIndexModification, MinWordLength, RepeatModification, StopwordModification,
};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::component::Component;
use crate::text::AttackedText;

pub trait Constraint: Send + Sync + fmt::Debug {
    fn describe(&self) -> Component;

    fn check(&self, reference: &AttackedText, candidate: &AttackedText) -> bool;

    /// Whether the reference is the original input (rather than the text
    /// the candidate was derived from).
    fn compare_against_original(&self) -> bool;
}

pub trait PreTransformationConstraint: Send + Sync + fmt::Debug {
    fn describe(&self) -> Component;

    /// Indices of `text` this constraint allows to be modified.
    fn allowed_indices(&self, text: &AttackedText) -> BTreeSet<usize>;
}

/// One entry of an attack's ordered constraint list.
#[derive(Clone, Debug)]
pub enum ConstraintItem {
    Pairwise(Arc<dyn Constraint>),
    Pre(Arc<dyn PreTransformationConstraint>),
}

impl ConstraintItem {
    pub fn pairwise<C: Constraint + 'static>(c: C) -> Self {
        ConstraintItem::Pairwise(Arc::new(c))
    }

    pub fn pre<C: PreTransformationConstraint + 'static>(c: C) -> Self {
        ConstraintItem::Pre(Arc::new(c))
    }

    pub fn describe(&self) -> Component {
        match self {
            ConstraintItem::Pairwise(c) => c.describe(),
            ConstraintItem::Pre(c) => c.describe(),
        }
    }
}

/// Indices every pre-transformation constraint in `items` allows.
pub fn allowed_indices(items: &[ConstraintItem], text: &AttackedText) -> BTreeSet<usize> {
    let mut allowed: BTreeSet<usize> = (0..text.num_words()).collect();
    for item in items {
        if let ConstraintItem::Pre(c) = item {
            let ok = c.allowed_indices(text);
            allowed.retain(|i| ok.contains(i));
        }
    }
    allowed
}

/// Runs the pairwise constraints in order, stopping at the first failure.
pub fn check_all(items: &[ConstraintItem], original: &AttackedText, previous: &AttackedText, candidate: &AttackedText) -> bool {
    items.iter().all(|item| match item {
        ConstraintItem::Pairwise(c) => {
            let reference = if c.compare_against_original() { original } else { previous };
            c.check(reference, candidate)
        }
        ConstraintItem::Pre(_) => true,
    })
}
