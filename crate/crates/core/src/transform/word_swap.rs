use std::collections::BTreeSet;
use std::sync::Arc;

use super::{dedup, swap_each, TransformContext, Transformation};
use crate::component::Component;
use crate::error::{Error, Result};
use crate::resources::{EmbeddingStore, InflectionTable, LexiconKind, SynonymLexicon};
use crate::text::{AttackedText, PosLexicon};

/// Nearest neighbours in an embedding space.
#[derive(Clone, Debug)]
pub struct WordSwapEmbedding {
    pub embeddings: Arc<EmbeddingStore>,
    pub max_candidates: usize,
}

impl Transformation for WordSwapEmbedding {
    fn describe(&self) -> Component {
        Component::new("WordSwapEmbedding")
            .with("max_candidates", self.max_candidates)
            .with("embedding_type", self.embeddings.name())
    }

    fn generate(&self, text: &AttackedText, indices: &BTreeSet<usize>, _: &mut TransformContext<'_>) -> Result<Vec<AttackedText>> {
        swap_each(text, indices, |_, word| {
            Ok(self
                .embeddings
                .nearest_neighbors(&word.to_lowercase(), self.max_candidates)
                .into_iter()
                .map(|(w, _)| w)
                .collect())
        })
    }
}

/// Synonyms from a thesaurus (WordNet-style) or a sememe lexicon
/// (HowNet-style). With a tagger attached, only synonyms sharing the
/// word's part of speech are proposed.
#[derive(Clone, Debug)]
pub struct LexiconSwap {
    pub lexicon: Arc<SynonymLexicon>,
    pub pos_filter: Option<Arc<PosLexicon>>,
    /// Negative means unlimited.
    pub max_candidates: i64,
}

impl LexiconSwap {
    pub fn wordnet(lexicon: Arc<SynonymLexicon>) -> Self {
        LexiconSwap {
            lexicon,
            pos_filter: None,
            max_candidates: -1,
        }
    }

    pub fn hownet(lexicon: Arc<SynonymLexicon>, pos: Arc<PosLexicon>, max_candidates: i64) -> Self {
        LexiconSwap {
            lexicon,
            pos_filter: Some(pos),
            max_candidates,
        }
    }
}

impl Transformation for LexiconSwap {
    fn describe(&self) -> Component {
        match self.lexicon.kind() {
            LexiconKind::Thesaurus => {
                let c = Component::new("WordSwapWordNet");
                if self.max_candidates < 0 {
                    c
                } else {
                    c.with("max_candidates", self.max_candidates)
                }
            }
            LexiconKind::Sememe => Component::new("WordSwapHowNet").with("max_candidates", self.max_candidates),
        }
    }

    fn generate(&self, text: &AttackedText, indices: &BTreeSet<usize>, _: &mut TransformContext<'_>) -> Result<Vec<AttackedText>> {
        let limit = usize::try_from(self.max_candidates).unwrap_or(usize::MAX);
        swap_each(text, indices, |_, word| {
            let pos = self.pos_filter.as_ref().map(|p| p.tag(word));
            Ok(self
                .lexicon
                .synonyms(word, pos)
                .into_iter()
                .take(limit)
                .map(str::to_string)
                .collect())
        })
    }
}

/// Other inflections of the same lemma and part of speech.
#[derive(Clone, Debug)]
pub struct WordSwapInflections {
    pub table: Arc<InflectionTable>,
}

impl Transformation for WordSwapInflections {
    fn describe(&self) -> Component {
        Component::new("WordSwapInflections")
    }

    fn generate(&self, text: &AttackedText, indices: &BTreeSet<usize>, _: &mut TransformContext<'_>) -> Result<Vec<AttackedText>> {
        swap_each(text, indices, |_, word| Ok(self.table.inflections_of(word)))
    }
}

/// White-box swap: the `top_n` (index, word) pairs with the largest
/// first-order increase in the victim's loss, across all allowed indices.
#[derive(Clone, Debug)]
pub struct WordSwapGradientBased {
    pub top_n: usize,
}

impl Transformation for WordSwapGradientBased {
    fn describe(&self) -> Component {
        Component::new("WordSwapGradientBased").with("top_n", self.top_n)
    }

    fn generate(&self, text: &AttackedText, indices: &BTreeSet<usize>, ctx: &mut TransformContext<'_>) -> Result<Vec<AttackedText>> {
        let victim = ctx
            .victim
            .ok_or_else(|| Error::config("gradient-based swaps need a victim model"))?;
        let wb = victim
            .white_box()
            .ok_or_else(|| Error::NotWhiteBox(victim.id().to_string()))?;
        let label = ctx
            .label
            .ok_or_else(|| Error::config("gradient-based swaps need a label"))?;
        let mut scored: Vec<(f64, usize, String)> = Vec::new();
        for &i in indices {
            for (w, s) in wb.word_swap_ranking(text, label, i) {
                scored.push((s, i, w));
            }
        }
        scored.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut out = Vec::new();
        for (_, i, w) in scored {
            if out.len() >= self.top_n {
                break;
            }
            let cand = text.replace_word_at(i, &w)?;
            if cand.printable() != text.printable() {
                out.push(cand);
                out = dedup(text, out);
            }
        }
        Ok(out)
    }

    fn is_black_box(&self) -> bool {
        false
    }
}

/// Removes one word. A single remaining word is never removed.
#[derive(Clone, Debug, Default)]
pub struct WordDeletion;

impl Transformation for WordDeletion {
    fn describe(&self) -> Component {
        Component::new("WordDeletion")
    }

    fn generate(&self, text: &AttackedText, indices: &BTreeSet<usize>, _: &mut TransformContext<'_>) -> Result<Vec<AttackedText>> {
        if text.num_words() <= 1 {
            return Ok(Vec::new());
        }
        let out = indices
            .iter()
            .filter(|&&i| i < text.num_words())
            .map(|&i| text.delete_word_at(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(dedup(text, out))
    }

    fn substitutes_only(&self) -> bool {
        false
    }
}
