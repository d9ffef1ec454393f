use std::collections::BTreeSet;
use std::sync::Arc;

use super::PreTransformationConstraint;
use crate::component::{py_list, py_set, Component};
use crate::resources::StopwordSet;
use crate::text::AttackedText;

/// Stopwords are never perturbed.
#[derive(Clone, Debug)]
pub struct StopwordModification {
    pub stopwords: Arc<StopwordSet>,
}

impl PreTransformationConstraint for StopwordModification {
    fn describe(&self) -> Component {
        Component::new("StopwordModification")
    }

    fn allowed_indices(&self, text: &AttackedText) -> BTreeSet<usize> {
        (0..text.num_words())
            .filter(|&i| !self.stopwords.contains(&text.words()[i]))
            .collect()
    }
}

/// A word that has been modified once is not modified again.
#[derive(Clone, Debug, Default)]
pub struct RepeatModification;

impl PreTransformationConstraint for RepeatModification {
    fn describe(&self) -> Component {
        Component::new("RepeatModification")
    }

    fn allowed_indices(&self, text: &AttackedText) -> BTreeSet<usize> {
        let modified = text.modified_indices();
        (0..text.num_words()).filter(|i| !modified.contains(i)).collect()
    }
}

/// Words shorter than `min_length` characters are left alone.
#[derive(Clone, Debug)]
pub struct MinWordLength {
    pub min_length: usize,
}

impl MinWordLength {
    pub const DEFAULT: usize = 4;
}

impl Default for MinWordLength {
    fn default() -> Self {
        MinWordLength {
            min_length: Self::DEFAULT,
        }
    }
}

impl PreTransformationConstraint for MinWordLength {
    fn describe(&self) -> Component {
        let c = Component::new("MinWordLength");
        if self.min_length == Self::DEFAULT {
            c
        } else {
            c.with("min_length", self.min_length)
        }
    }

    fn allowed_indices(&self, text: &AttackedText) -> BTreeSet<usize> {
        (0..text.num_words())
            .filter(|&i| text.words()[i].chars().count() >= self.min_length)
            .collect()
    }
}

/// Only the first `max_length` words may be modified.
#[derive(Clone, Debug)]
pub struct MaxWordIndexModification {
    pub max_length: usize,
}

impl PreTransformationConstraint for MaxWordIndexModification {
    fn describe(&self) -> Component {
        Component::new("MaxWordIndexModification").with("max_length", self.max_length)
    }

    fn allowed_indices(&self, text: &AttackedText) -> BTreeSet<usize> {
        (0..text.num_words().min(self.max_length)).collect()
    }
}

/// For inputs whose column labels equal `matching_column_labels`, words in
/// the ignored columns are frozen. Other inputs are unaffected.
#[derive(Clone, Debug)]
pub struct InputColumnModification {
    pub matching_column_labels: Vec<String>,
    pub columns_to_ignore: BTreeSet<String>,
}

impl InputColumnModification {
    /// The premise of a premise/hypothesis pair is frozen.
    pub fn premise_hypothesis() -> Self {
        InputColumnModification {
            matching_column_labels: vec!["premise".into(), "hypothesis".into()],
            columns_to_ignore: BTreeSet::from(["premise".to_string()]),
        }
    }
}

impl PreTransformationConstraint for InputColumnModification {
    fn describe(&self) -> Component {
        Component::new("InputColumnModification")
            .with("matching_column_labels", py_list(&self.matching_column_labels))
            .with("columns_to_ignore", py_set(&self.columns_to_ignore))
    }

    fn allowed_indices(&self, text: &AttackedText) -> BTreeSet<usize> {
        let all = 0..text.num_words();
        if text.column_labels() != self.matching_column_labels.as_slice() {
            return all.collect();
        }
        all.filter(|&i| text.column_of(i).is_some_and(|c| !self.columns_to_ignore.contains(c)))
            .collect()
    }
}
