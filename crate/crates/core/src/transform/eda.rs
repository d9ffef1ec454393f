use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;

use super::{dedup, TransformContext, Transformation};
use crate::component::Component;
use crate::error::Result;
use crate::resources::SynonymLexicon;
use crate::text::AttackedText;

/// Inserts a random synonym of a random word of the text after each allowed
/// index. Only gaps between two words are used.
#[derive(Clone, Debug)]
pub struct WordInsertionRandomSynonym {
    pub lexicon: Arc<SynonymLexicon>,
}

impl Transformation for WordInsertionRandomSynonym {
    fn describe(&self) -> Component {
        Component::new("WordInsertionRandomSynonym")
    }

    fn generate(&self, text: &AttackedText, indices: &BTreeSet<usize>, ctx: &mut TransformContext<'_>) -> Result<Vec<AttackedText>> {
        let sources: Vec<Vec<&str>> = text
            .words()
            .iter()
            .map(|w| self.lexicon.synonyms(w, None))
            .filter(|s| !s.is_empty())
            .collect();
        if sources.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for &i in indices {
            if i + 1 >= text.num_words() {
                continue;
            }
            let syns = sources.choose(ctx.rng).expect("non-empty");
            let word = syns.choose(ctx.rng).expect("non-empty");
            out.push(text.insert_word_after(i, word)?);
        }
        Ok(dedup(text, out))
    }

    fn substitutes_only(&self) -> bool {
        false
    }
}

/// Swaps each allowed word with a randomly chosen different word anywhere
/// in the text.
#[derive(Clone, Debug, Default)]
pub struct WordInnerSwapRandom;

impl Transformation for WordInnerSwapRandom {
    fn describe(&self) -> Component {
        Component::new("WordInnerSwapRandom")
    }

    fn generate(&self, text: &AttackedText, indices: &BTreeSet<usize>, ctx: &mut TransformContext<'_>) -> Result<Vec<AttackedText>> {
        let words = text.words();
        let mut out = Vec::new();
        for &i in indices {
            if i >= words.len() {
                continue;
            }
            let partners: Vec<usize> = (0..words.len()).filter(|&j| words[j] != words[i]).collect();
            if let Some(&j) = partners.choose(ctx.rng) {
                out.push(text.replace_words_at(&[(i, words[j].as_str()), (j, words[i].as_str())])?);
            }
        }
        Ok(dedup(text, out))
    }
}
