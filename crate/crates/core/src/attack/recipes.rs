//! Named attack configurations.
//!
//! Recipes marked `-lite` keep every component of the published attack
//! except sentence-encoder and language-model constraints, which need
//! neural models.

use super::{build_attack, Attack};
use crate::component::{AttackSpec, Component};
use crate::error::{Error, Result};
use crate::model::Victim;
use crate::resources::{bundled::EMBEDDING_NAME, Resources};

/// Every recipe [`build_recipe`] accepts, in listing order.
pub const RECIPES: &[&str] = &[
    "alzantot-lite",
    "deepwordbug",
    "fast-alzantot-lite",
    "hotflip",
    "iga-lite",
    "input-reduction",
    "kuleshov-lite",
    "morpheus",
    "pruthi",
    "pso",
    "pwws",
    "seq2sick",
    "textbugger-lite",
    "textfooler-lite",
];

/// Published recipes that cannot be built, with the component they lack.
const OUT_OF_SCOPE: &[(&str, &str)] = &[
    ("alzantot", "GoogleLanguageModel"),
    ("bae", "WordSwapMaskedLM"),
    ("bert-attack", "WordSwapMaskedLM"),
    ("fast-alzantot", "LearningToWriteLanguageModel"),
    ("kuleshov", "GPT2"),
    ("textbugger", "UniversalSentenceEncoder"),
    ("textfooler", "UniversalSentenceEncoder"),
];

pub fn recipe_names() -> &'static [&'static str] {
    RECIPES
}

fn c(name: &str) -> Component {
    Component::new(name)
}

fn wir(method: &str) -> Component {
    c("GreedyWordSwapWIR").with("wir_method", method)
}

fn untargeted() -> Component {
    c("UntargetedClassification")
}

fn swap_embedding(max_candidates: usize) -> Component {
    c("WordSwapEmbedding")
        .with("max_candidates", max_candidates)
        .with("embedding_type", EMBEDDING_NAME)
}

fn embedding_distance(bound: &str, value: f64, compare_against_original: bool) -> Component {
    c("WordEmbeddingDistance")
        .with("embedding_type", EMBEDDING_NAME)
        .with(bound, value)
        .with("cased", false)
        .with("include_unknown_words", true)
        .with("compare_against_original", compare_against_original)
}

fn max_words(key: &str, value: f64) -> Component {
    let m = c("MaxWordsPerturbed");
    let m = if key == "max_num_words" {
        m.with(key, value as usize)
    } else {
        m.with(key, value)
    };
    m.with("compare_against_original", true)
}

fn levenshtein(max: usize) -> Component {
    c("LevenshteinEditDistance")
        .with("max_edit_distance", max)
        .with("compare_against_original", true)
}

fn part_of_speech() -> Component {
    c("PartOfSpeech")
        .with("tagger_type", "lexicon")
        .with("tagset", "universal")
        .with("allow_verb_noun_swap", true)
        .with("compare_against_original", true)
}

fn char_swap(name: &str, random_one: Option<bool>) -> Component {
    match random_one {
        Some(r) => c(name).with("random_one", r),
        None => c(name),
    }
}

fn composite(members: Vec<Component>) -> Component {
    members.into_iter().fold(c("CompositeTransformation"), Component::with_child)
}

fn input_column() -> Component {
    c("InputColumnModification")
        .with("matching_column_labels", "['premise', 'hypothesis']")
        .with("columns_to_ignore", "{'premise'}")
}

fn genetic(name: &str) -> Component {
    c(name)
        .with("pop_size", 60usize)
        .with("max_iters", 20usize)
        .with("temp", 0.3)
        .with("give_up_if_no_improvement", false)
}

/// The component description of a recipe.
pub fn recipe_spec(name: &str) -> Result<AttackSpec> {
    let repeat = || c("RepeatModification");
    let stopword = || c("StopwordModification");
    let spec = |search, goal, transformation, constraints| AttackSpec {
        search_method: search,
        goal_function: goal,
        transformation,
        constraints,
    };
    Ok(match name {
        "deepwordbug" => spec(
            wir("unk"),
            untargeted(),
            composite(vec![
                char_swap("WordSwapNeighboringCharacterSwap", Some(true)),
                char_swap("WordSwapRandomCharacterSubstitution", Some(true)),
                char_swap("WordSwapRandomCharacterDeletion", Some(true)),
                char_swap("WordSwapRandomCharacterInsertion", Some(true)),
            ]),
            vec![levenshtein(30), repeat(), stopword()],
        ),
        "textfooler-lite" => spec(
            wir("delete"),
            untargeted(),
            swap_embedding(50),
            vec![
                embedding_distance("min_cos_sim", 0.5, true),
                part_of_speech(),
                repeat(),
                stopword(),
                input_column(),
            ],
        ),
        "alzantot-lite" => spec(
            genetic("GeneticAlgorithm"),
            untargeted(),
            swap_embedding(8),
            vec![
                max_words("max_percent", 0.2),
                embedding_distance("max_mse_dist", 0.5, false),
                repeat(),
                stopword(),
                input_column(),
            ],
        ),
        "fast-alzantot-lite" => spec(
            genetic("GeneticAlgorithm"),
            untargeted(),
            swap_embedding(8),
            vec![
                max_words("max_percent", 0.2),
                embedding_distance("max_mse_dist", 0.5, true),
                repeat(),
                stopword(),
            ],
        ),
        "iga-lite" => spec(
            genetic("ImprovedGeneticAlgorithm"),
            untargeted(),
            swap_embedding(50),
            vec![
                stopword(),
                max_words("max_percent", 0.2),
                embedding_distance("max_mse_dist", 0.5, true),
            ],
        ),
        "input-reduction" => spec(
            wir("delete"),
            c("InputReduction").with("maximizable", true),
            c("WordDeletion"),
            vec![repeat(), stopword()],
        ),
        "kuleshov-lite" => spec(
            c("GreedySearch"),
            untargeted(),
            swap_embedding(15),
            vec![
                max_words("max_percent", 0.5),
                c("ThoughtVector")
                    .with("embedding_type", EMBEDDING_NAME)
                    .with("metric", "max_euclidean")
                    .with("threshold", -0.2)
                    .with("window_size", f64::INFINITY)
                    .with("skip_text_shorter_than_window", false)
                    .with("compare_against_original", true),
                repeat(),
                stopword(),
            ],
        ),
        "hotflip" => spec(
            c("BeamSearch").with("beam_width", 10usize),
            untargeted(),
            c("WordSwapGradientBased").with("top_n", 1usize),
            vec![
                max_words("max_num_words", 2.0),
                embedding_distance("min_cos_sim", 0.8, true),
                part_of_speech(),
                repeat(),
                stopword(),
            ],
        ),
        "morpheus" => spec(
            c("GreedySearch"),
            c("MinimizeBleu").with("maximizable", false).with("target_bleu", 0.0),
            c("WordSwapInflections"),
            vec![repeat(), stopword()],
        ),
        "pso" => spec(
            c("ParticleSwarmOptimization"),
            untargeted(),
            c("WordSwapHowNet").with("max_candidates", -1i64),
            vec![repeat(), stopword(), input_column()],
        ),
        "pruthi" => spec(
            c("GreedySearch"),
            untargeted(),
            composite(vec![
                char_swap("WordSwapNeighboringCharacterSwap", Some(false)),
                char_swap("WordSwapRandomCharacterDeletion", Some(false)),
                char_swap("WordSwapRandomCharacterInsertion", Some(false)),
                char_swap("WordSwapQWERTY", None),
            ]),
            vec![max_words("max_num_words", 1.0), c("MinWordLength"), stopword(), repeat()],
        ),
        "pwws" => spec(wir("pwws"), untargeted(), c("WordSwapWordNet"), vec![repeat(), stopword()]),
        "seq2sick" => spec(
            wir("unk"),
            c("NonOverlappingOutput"),
            swap_embedding(50),
            vec![levenshtein(30), repeat(), stopword()],
        ),
        "textbugger-lite" => spec(
            wir("unk"),
            untargeted(),
            composite(vec![
                char_swap("WordSwapRandomCharacterInsertion", Some(true)),
                char_swap("WordSwapRandomCharacterDeletion", Some(true)),
                char_swap("WordSwapNeighboringCharacterSwap", Some(true)),
                char_swap("WordSwapHomoglyphSwap", None),
                swap_embedding(5),
            ]),
            vec![repeat(), stopword()],
        ),
        other => {
            return Err(match OUT_OF_SCOPE.iter().find(|(r, _)| *r == other) {
                Some((r, comp)) => Error::UnsupportedComponent {
                    recipe: r.to_string(),
                    component: comp.to_string(),
                },
                None => Error::UnknownRecipe(other.to_string()),
            })
        }
    })
}

/// Builds a named recipe against `victim`.
pub fn build_recipe(name: &str, res: &Resources, victim: Victim) -> Result<Attack> {
    build_attack(&recipe_spec(name)?, res, victim)
}
