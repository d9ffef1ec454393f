use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "advtext", version, about = "Adversarial attacks, augmentation and adversarial training for text classifiers")]
pub struct Cli {
    /// Directory whose resource files replace the bundled ones.
    #[arg(long, global = true, env = "ADVTEXT_RESOURCES")]
    pub resource_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Attack a model over a dataset.
    Attack(AttackArgs),
    /// Write perturbed copies of every row of a CSV file.
    Augment(AugmentArgs),
    /// Train a linear classifier, optionally with augmentation or adversarial training.
    Train(TrainArgs),
    /// Report a model's accuracy on a dataset.
    Eval(EvalArgs),
    /// List the attack and augmentation recipes.
    ListRecipes(ListArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").args(["recipe", "attack_file", "transformation"]).required(true)))]
pub struct AttackArgs {
    /// A named recipe, see `list-recipes`.
    #[arg(long, conflicts_with_all = ["attack_file", "search_method", "transformation", "constraints", "goal_function"])]
    pub recipe: Option<String>,

    /// An attack prototype listing to rebuild.
    #[arg(long, conflicts_with_all = ["search_method", "transformation", "constraints", "goal_function"])]
    pub attack_file: Option<PathBuf>,

    /// Search method token, e.g. `beam-search:beam_width=4`. Defaults to `greedy-wir`.
    #[arg(long)]
    pub search_method: Option<String>,

    /// Transformation token. Give it more than once for a composite.
    #[arg(long)]
    pub transformation: Vec<String>,

    /// Constraint tokens, in the order they are checked.
    #[arg(long, num_args = 1..)]
    pub constraints: Vec<String>,

    /// Goal function token. Defaults to `untargeted-classification`.
    #[arg(long)]
    pub goal_function: Option<String>,

    #[command(flatten)]
    pub model: ModelArgs,

    /// Examples to attack, from the start of the dataset.
    #[arg(long)]
    pub num_examples: Option<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Stop each search after this many model queries.
    #[arg(long)]
    pub query_budget: Option<usize>,

    /// Disable the model-output and constraint cache.
    #[arg(long)]
    pub no_cache: bool,

    /// Extra outputs as `FORMAT=PATH`, with FORMAT one of txt, csv, html, jsonl.
    #[arg(long, value_name = "FORMAT=PATH")]
    pub log_to: Vec<String>,

    /// Print only the summary to stdout.
    #[arg(long)]
    pub quiet: bool,

    /// Never colour stdout.
    #[arg(long)]
    pub no_color: bool,

    /// Print the attack prototype before running.
    #[arg(long)]
    pub print_prototype: bool,
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    /// `bundled-sentiment`, `bundled-translator`, a saved linear model, or a
    /// `.tsv` translation dictionary. The default suits the goal function.
    #[arg(long)]
    pub model: Option<String>,

    /// Dataset file. The default is the bundled corpus matching the model.
    #[arg(long)]
    pub dataset: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AugmentArgs {
    /// Input CSV file.
    #[arg(long)]
    pub csv: PathBuf,

    /// Column holding the text to augment.
    #[arg(long, default_value = "text")]
    pub input_column: String,

    #[arg(long, default_value = "embedding")]
    pub recipe: String,

    /// Fraction of words to change; values above 1 are percentages.
    #[arg(long, default_value_t = 0.1)]
    pub pct_words_to_swap: f64,

    #[arg(long, default_value_t = 1)]
    pub transformations_per_example: usize,

    /// Leave the source rows out of the output.
    #[arg(long)]
    pub exclude_original: bool,

    /// Output file. Defaults to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct TrainArgs {
    /// Model family. Only `linear` is available.
    #[arg(long, default_value = "linear")]
    pub model: String,

    /// Training data. Defaults to the bundled sentiment training split.
    #[arg(long)]
    pub dataset: Option<PathBuf>,

    /// Evaluation data. Defaults to the bundled sentiment test split when no
    /// dataset is given.
    #[arg(long)]
    pub dev: Option<PathBuf>,

    #[arg(long, default_value_t = 20)]
    pub epochs: usize,

    #[arg(long, default_value_t = 32)]
    pub batch_size: usize,

    #[arg(long, default_value_t = 0.1)]
    pub learning_rate: f64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long)]
    pub early_stopping_patience: Option<usize>,

    /// Use words only, without character n-gram features.
    #[arg(long)]
    pub bag_of_words: bool,

    /// Attack recipe for adversarial training.
    #[arg(long)]
    pub attack: Option<String>,

    /// Epochs on clean data before the first adversarial set.
    #[arg(long, default_value_t = 0)]
    pub num_clean_epochs: usize,

    /// Epochs between adversarial set regenerations.
    #[arg(long, default_value_t = advtext::training::DEFAULT_ATTACK_PERIOD)]
    pub attack_period: usize,

    /// Augmentation recipe applied once before training.
    #[arg(long)]
    pub augment: Option<String>,

    #[arg(long, default_value_t = 0.1)]
    pub pct_words_to_swap: f64,

    #[arg(long, default_value_t = 1)]
    pub transformations_per_example: usize,

    /// Where to save the trained model.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Write the per-epoch history as JSON lines.
    #[arg(long)]
    pub history: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    #[arg(long)]
    pub num_examples: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ListArgs {
    /// Print each attack recipe's prototype listing.
    #[arg(long)]
    pub prototypes: bool,
}
