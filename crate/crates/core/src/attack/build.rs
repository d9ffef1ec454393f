//! Turns [`Component`] descriptions into live attack parts.
//!
//! Each part is looked up by its prototype class name or by its short
//! command-line alias; both accept the same parameters.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::str::FromStr;
use std::sync::Arc;

use super::Attack;
use crate::component::{parse_str_list, AttackSpec, Component};
use crate::constraints::{
    Bleu, Chrf, ConstraintItem, EmbeddingBound, InputColumnModification, LevenshteinEditDistance,
    MaxWordIndexModification, MaxWordsPerturbed, MinWordLength, PartOfSpeech, RepeatModification,
    StopwordModification, ThoughtVector, ThoughtVectorMetric, WordEmbeddingDistance,
};
use crate::error::{Error, Result};
use crate::goal::{
    GoalFunction, InputReduction, MinimizeBleu, NonOverlappingOutput, TargetedClassification,
    UntargetedClassification,
};
use crate::model::Victim;
use crate::resources::Resources;
use crate::search::{BeamSearch, GeneticAlgorithm, GreedyWordSwapWir, ParticleSwarmOptimization, SearchMethod, WirMethod};
use crate::transform::{
    CharEdit, CharacterSwap, CompositeTransformation, LexiconSwap, Transformation, WordDeletion,
    WordInnerSwapRandom, WordInsertionRandomSynonym, WordSwapEmbedding, WordSwapGradientBased,
    WordSwapInflections,
};

/// Components that exist in the reference tool but need neural models.
const UNSUPPORTED: &[&str] = &[
    "WordSwapMaskedLM",
    "word-swap-masked-lm",
    "UniversalSentenceEncoder",
    "use",
    "BERT",
    "BERTScore",
    "GoogleLanguageModel",
    "google-language-model",
    "LearningToWriteLanguageModel",
    "GPT2",
    "gpt2",
];

fn unsupported(name: &str) -> Option<Error> {
    UNSUPPORTED.contains(&name).then(|| Error::UnsupportedComponent {
        recipe: "attack".into(),
        component: name.to_string(),
    })
}

/// Typed access to a component's parameters that remembers which keys were
/// read, so leftovers can be reported.
struct Params<'a> {
    c: &'a Component,
    used: RefCell<BTreeSet<&'a str>>,
}

impl<'a> Params<'a> {
    fn new(c: &'a Component) -> Self {
        Params {
            c,
            used: RefCell::new(BTreeSet::new()),
        }
    }

    fn raw(&self, key: &'a str) -> Option<&'a str> {
        self.used.borrow_mut().insert(key);
        self.c.get(key).map(|v| v.trim().trim_matches(|ch| ch == '\'' || ch == '"'))
    }

    fn bad(&self, key: &str, value: &str) -> Error {
        Error::config(format!("{}: invalid value `{value}` for `{key}`", self.c.name))
    }

    fn parsed<T: FromStr>(&self, key: &'a str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| self.bad(key, v)),
        }
    }

    fn num<T: FromStr>(&self, key: &'a str, default: T) -> Result<T> {
        Ok(self.parsed(key)?.unwrap_or(default))
    }

    fn float(&self, key: &'a str) -> Result<Option<f64>> {
        match self.raw(key) {
            None => Ok(None),
            Some("inf") => Ok(Some(f64::INFINITY)),
            Some("-inf") => Ok(Some(f64::NEG_INFINITY)),
            Some(v) => v.parse().map(Some).map_err(|_| self.bad(key, v)),
        }
    }

    fn flag(&self, key: &'a str, default: bool) -> Result<bool> {
        match self.raw(key) {
            None => Ok(default),
            Some("True" | "true" | "1" | "yes") => Ok(true),
            Some("False" | "false" | "0" | "no") => Ok(false),
            Some(v) => Err(self.bad(key, v)),
        }
    }

    fn text(&self, key: &'a str) -> Option<&'a str> {
        self.raw(key)
    }

    /// Fails if any parameter was never read.
    fn finish(self) -> Result<()> {
        let used = self.used.into_inner();
        match self.c.params.iter().find(|(k, _)| !used.contains(k.as_str())) {
            Some((k, _)) => Err(Error::config(format!("{} has no parameter `{k}`", self.c.name))),
            None => Ok(()),
        }
    }
}

fn no_children(c: &Component) -> Result<()> {
    if c.children.is_empty() {
        Ok(())
    } else {
        Err(Error::config(format!("{} takes no sub-components", c.name)))
    }
}

fn check_embedding_type(p: &Params<'_>, res: &Resources) -> Result<()> {
    match p.text("embedding_type") {
        Some(t) if t != res.embeddings.name() => Err(Error::config(format!(
            "embedding `{t}` is not loaded (available: {})",
            res.embeddings.name()
        ))),
        _ => Ok(()),
    }
}

pub fn build_goal(c: &Component) -> Result<Arc<dyn GoalFunction>> {
    no_children(c)?;
    let p = Params::new(c);
    let goal: Arc<dyn GoalFunction> = match c.name.as_str() {
        "UntargetedClassification" | "untargeted-classification" => Arc::new(UntargetedClassification),
        "TargetedClassification" | "targeted-classification" => {
            let target = match p.parsed::<usize>("target_class")? {
                Some(t) => Some(t),
                None => p.parsed::<usize>("target")?,
            };
            let target_class = target.ok_or_else(|| Error::config("targeted-classification needs target_class"))?;
            Arc::new(TargetedClassification { target_class })
        }
        "InputReduction" | "input-reduction" => {
            if !p.flag("maximizable", true)? {
                return Err(Error::config("InputReduction is always maximizable"));
            }
            Arc::new(InputReduction)
        }
        "NonOverlappingOutput" | "non-overlapping-output" => Arc::new(NonOverlappingOutput),
        "MinimizeBleu" | "minimize-bleu" => Arc::new(MinimizeBleu {
            maximizable: p.flag("maximizable", false)?,
            target_bleu: p.float("target_bleu")?.unwrap_or(0.0),
        }),
        other => return Err(unsupported(other).unwrap_or_else(|| Error::UnknownComponent(other.to_string()))),
    };
    p.finish()?;
    Ok(goal)
}

pub fn build_constraint(c: &Component, res: &Resources) -> Result<ConstraintItem> {
    no_children(c)?;
    let p = Params::new(c);
    let item = match c.name.as_str() {
        "RepeatModification" | "repeat" => ConstraintItem::pre(RepeatModification),
        "StopwordModification" | "stopword" => ConstraintItem::pre(StopwordModification {
            stopwords: res.stopwords.clone(),
        }),
        "MinWordLength" | "min-word-length" => ConstraintItem::pre(MinWordLength {
            min_length: p.num("min_length", MinWordLength::DEFAULT)?,
        }),
        "MaxWordIndexModification" | "max-word-index" => ConstraintItem::pre(MaxWordIndexModification {
            max_length: p
                .parsed("max_length")?
                .ok_or_else(|| Error::config("max-word-index needs max_length"))?,
        }),
        "InputColumnModification" | "input-column" => {
            let d = InputColumnModification::premise_hypothesis();
            ConstraintItem::pre(InputColumnModification {
                matching_column_labels: p
                    .text("matching_column_labels")
                    .map(parse_str_list)
                    .unwrap_or(d.matching_column_labels),
                columns_to_ignore: p
                    .text("columns_to_ignore")
                    .map(|v| parse_str_list(v).into_iter().collect())
                    .unwrap_or(d.columns_to_ignore),
            })
        }
        "LevenshteinEditDistance" | "levenshtein" => ConstraintItem::pairwise(LevenshteinEditDistance {
            max_edit_distance: p.num("max_edit_distance", 30)?,
            compare_against_original: p.flag("compare_against_original", true)?,
        }),
        "MaxWordsPerturbed" | "max-words-perturbed" => {
            let max_num_words = p.parsed("max_num_words")?;
            let max_percent = p.float("max_percent")?;
            if max_num_words.is_none() && max_percent.is_none() {
                return Err(Error::config("max-words-perturbed needs max_num_words or max_percent"));
            }
            ConstraintItem::pairwise(MaxWordsPerturbed {
                max_num_words,
                max_percent,
                compare_against_original: p.flag("compare_against_original", true)?,
            })
        }
        "WordEmbeddingDistance" | "embedding" => {
            check_embedding_type(&p, res)?;
            let bound = match (p.float("min_cos_sim")?, p.float("max_mse_dist")?) {
                (Some(_), Some(_)) => return Err(Error::config("give min_cos_sim or max_mse_dist, not both")),
                (Some(x), None) => EmbeddingBound::MinCosSim(x),
                (None, Some(x)) => EmbeddingBound::MaxMseDist(x),
                (None, None) => EmbeddingBound::MinCosSim(0.5),
            };
            ConstraintItem::pairwise(WordEmbeddingDistance {
                embeddings: res.embeddings.clone(),
                bound,
                cased: p.flag("cased", false)?,
                include_unknown_words: p.flag("include_unknown_words", true)?,
                compare_against_original: p.flag("compare_against_original", true)?,
            })
        }
        "PartOfSpeech" | "part-of-speech" => {
            match p.text("tagger_type") {
                None | Some("lexicon" | "nltk") => {}
                Some(other) => return Err(p.bad("tagger_type", other)),
            }
            match p.text("tagset") {
                None | Some("universal") => {}
                Some(other) => return Err(p.bad("tagset", other)),
            }
            ConstraintItem::pairwise(PartOfSpeech {
                lexicon: res.pos.clone(),
                allow_verb_noun_swap: p.flag("allow_verb_noun_swap", true)?,
                compare_against_original: p.flag("compare_against_original", true)?,
            })
        }
        "ThoughtVector" | "thought-vector" => {
            check_embedding_type(&p, res)?;
            let metric = match p.text("metric") {
                None | Some("max_euclidean") => ThoughtVectorMetric::MaxEuclidean,
                Some("cosine") => ThoughtVectorMetric::Cosine,
                Some(other) => return Err(p.bad("metric", other)),
            };
            if p.float("window_size")?.is_some_and(|w| w.is_finite()) {
                return Err(Error::config("ThoughtVector supports only window_size inf"));
            }
            if p.flag("skip_text_shorter_than_window", false)? {
                return Err(Error::config("ThoughtVector supports only skip_text_shorter_than_window False"));
            }
            ConstraintItem::pairwise(ThoughtVector {
                embeddings: res.embeddings.clone(),
                metric,
                threshold: p.float("threshold")?.unwrap_or(-0.2),
                compare_against_original: p.flag("compare_against_original", true)?,
            })
        }
        "BLEU" | "bleu" => ConstraintItem::pairwise(Bleu {
            max_bleu_diff: p
                .float("max_bleu_diff")?
                .ok_or_else(|| Error::config("bleu needs max_bleu_diff"))?,
            compare_against_original: p.flag("compare_against_original", true)?,
        }),
        "chrF" | "chrf" => ConstraintItem::pairwise(Chrf {
            max_chrf_diff: p
                .float("max_chrf_diff")?
                .ok_or_else(|| Error::config("chrf needs max_chrf_diff"))?,
            compare_against_original: p.flag("compare_against_original", true)?,
        }),
        other => return Err(unsupported(other).unwrap_or_else(|| Error::UnknownComponent(other.to_string()))),
    };
    p.finish()?;
    Ok(item)
}

fn char_edit(name: &str) -> Option<CharEdit> {
    Some(match name {
        "WordSwapRandomCharacterInsertion" | "char-insert" => CharEdit::Insert,
        "WordSwapRandomCharacterDeletion" | "char-delete" => CharEdit::Delete,
        "WordSwapNeighboringCharacterSwap" | "char-swap" => CharEdit::NeighborSwap,
        "WordSwapRandomCharacterSubstitution" | "char-substitute" => CharEdit::Substitute,
        "WordSwapHomoglyphSwap" | "char-homoglyph" => CharEdit::Homoglyph,
        "WordSwapQWERTY" | "char-qwerty" => CharEdit::Qwerty,
        _ => return None,
    })
}

pub fn build_transformation(c: &Component, res: &Resources) -> Result<Arc<dyn Transformation>> {
    if matches!(c.name.as_str(), "CompositeTransformation" | "composite") {
        if !c.params.is_empty() {
            return Err(Error::config("CompositeTransformation takes no parameters"));
        }
        let members = c
            .children
            .iter()
            .map(|m| build_transformation(m, res))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Arc::new(CompositeTransformation::new(members)));
    }
    no_children(c)?;
    let p = Params::new(c);
    let t: Arc<dyn Transformation> = if let Some(edit) = char_edit(&c.name) {
        Arc::new(CharacterSwap::new(
            edit,
            p.flag("random_one", edit.default_random_one())?,
            res.char_maps.clone(),
        ))
    } else {
        match c.name.as_str() {
            "WordSwapEmbedding" | "word-swap-embedding" => {
                check_embedding_type(&p, res)?;
                Arc::new(WordSwapEmbedding {
                    embeddings: res.embeddings.clone(),
                    max_candidates: p.num("max_candidates", 15)?,
                })
            }
            "WordSwapWordNet" | "word-swap-wordnet" => Arc::new(LexiconSwap {
                lexicon: res.thesaurus.clone(),
                pos_filter: None,
                max_candidates: p.num("max_candidates", -1)?,
            }),
            "WordSwapHowNet" | "word-swap-hownet" => Arc::new(LexiconSwap::hownet(
                res.sememes.clone(),
                res.pos.clone(),
                p.num("max_candidates", -1)?,
            )),
            "WordSwapInflections" | "word-swap-inflections" => Arc::new(WordSwapInflections {
                table: res.inflections.clone(),
            }),
            "WordSwapGradientBased" | "word-swap-gradient" => Arc::new(WordSwapGradientBased {
                top_n: p.num("top_n", 1)?,
            }),
            "WordDeletion" | "word-deletion" => Arc::new(WordDeletion),
            "WordInsertionRandomSynonym" | "word-insertion-random-synonym" => Arc::new(WordInsertionRandomSynonym {
                lexicon: res.thesaurus.clone(),
            }),
            "WordInnerSwapRandom" | "word-inner-swap-random" => Arc::new(WordInnerSwapRandom),
            other => return Err(unsupported(other).unwrap_or_else(|| Error::UnknownComponent(other.to_string()))),
        }
    };
    p.finish()?;
    Ok(t)
}

pub fn build_search(c: &Component) -> Result<Arc<dyn SearchMethod>> {
    no_children(c)?;
    let p = Params::new(c);
    let s: Arc<dyn SearchMethod> = match c.name.as_str() {
        "GreedyWordSwapWIR" | "greedy-wir" | "greedy-word-wir" => {
            let raw = p.text("wir_method").unwrap_or("unk");
            let m = WirMethod::parse(raw).ok_or_else(|| p.bad("wir_method", raw))?;
            Arc::new(GreedyWordSwapWir::new(m))
        }
        "GreedySearch" | "greedy" => Arc::new(BeamSearch::greedy()),
        "BeamSearch" | "beam-search" => {
            let b: usize = p.num("beam_width", 8)?;
            if b == 0 {
                return Err(p.bad("beam_width", "0"));
            }
            Arc::new(BeamSearch::new(b))
        }
        "GeneticAlgorithm" | "AlzantotGeneticAlgorithm" | "genetic-algorithm" | "alzantot-ga" | "ImprovedGeneticAlgorithm" | "iga" => {
            let base = if matches!(c.name.as_str(), "ImprovedGeneticAlgorithm" | "iga") {
                GeneticAlgorithm::improved()
            } else {
                GeneticAlgorithm::alzantot()
            };
            let temp = p.float("temp")?.unwrap_or(base.temp);
            if temp.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
                return Err(p.bad("temp", &temp.to_string()));
            }
            Arc::new(GeneticAlgorithm {
                pop_size: p.num("pop_size", base.pop_size)?,
                max_iters: p.num("max_iters", base.max_iters)?,
                temp,
                give_up_if_no_improvement: p.flag("give_up_if_no_improvement", base.give_up_if_no_improvement)?,
                variant: base.variant,
            })
        }
        "ParticleSwarmOptimization" | "pso" => {
            let d = ParticleSwarmOptimization::default();
            Arc::new(ParticleSwarmOptimization {
                pop_size: p.num("pop_size", d.pop_size)?,
                max_iters: p.num("max_iters", d.max_iters)?,
                initial_velocity: p.float("initial_velocity")?.unwrap_or(d.initial_velocity),
                mutation_rate: p.float("mutation_rate")?.unwrap_or(d.mutation_rate),
                max_turn_retries: d.max_turn_retries,
            })
        }
        other => return Err(Error::UnknownComponent(other.to_string())),
    };
    p.finish()?;
    Ok(s)
}

/// Builds an attack from a full description, such as a parsed prototype.
pub fn build_attack(spec: &AttackSpec, res: &Resources, victim: Victim) -> Result<Attack> {
    let constraints = spec
        .constraints
        .iter()
        .map(|c| build_constraint(c, res))
        .collect::<Result<Vec<_>>>()?;
    Attack::new(
        build_goal(&spec.goal_function)?,
        constraints,
        build_transformation(&spec.transformation, res)?,
        build_search(&spec.search_method)?,
        victim,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_parameters_are_rejected() {
        let c = Component::from_token("beam-search:beam_width=4,width=3").unwrap();
        assert!(matches!(build_search(&c), Err(Error::Config(_))));
        let ok = build_search(&Component::from_token("beam-search:beam_width=4").unwrap()).unwrap();
        assert_eq!(ok.describe().get("beam_width"), Some("4"));
    }

    #[test]
    fn aliases_and_class_names_agree() {
        let res = Resources::bundled();
        let a = build_constraint(&Component::from_token("levenshtein:max_edit_distance=30").unwrap(), &res).unwrap();
        let b = build_constraint(&a.describe(), &res).unwrap();
        assert_eq!(a.describe(), b.describe());
    }

    #[test]
    fn neural_components_are_unsupported() {
        let res = Resources::bundled();
        let e = build_constraint(&Component::new("UniversalSentenceEncoder"), &res).unwrap_err();
        assert!(matches!(e, Error::UnsupportedComponent { .. }));
        assert!(matches!(
            build_goal(&Component::new("nonsense")),
            Err(Error::UnknownComponent(_))
        ));
    }
}
