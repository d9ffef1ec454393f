use std::fs::File;
use std::io::{self, BufWriter, IsTerminal, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use advtext::attack::{build_attack, build_goal, recipe_spec, RECIPES};
use advtext::augment::{normalize_pct, Augmenter, AUGMENT_RECIPES};
use advtext::component::{parse_prototype, AttackSpec, Component};
use advtext::dataset::{delimiter_for, Dataset};
use advtext::goal::Task;
use advtext::model::{bundled, DictionaryTranslator, FeatureConfig, LinearTextClassifier, TrainConfig, Victim};
use advtext::report::{CsvWriter, Fanout, HtmlWriter, JsonlWriter, ResultWriter, TextWriter};
use advtext::resources::Resources;
use advtext::training::{recipe_factory, train, TrainingPlan};

use crate::args::{AttackArgs, AugmentArgs, EvalArgs, ListArgs, ModelArgs, TrainArgs};

/// A command-line mistake, reported with exit code 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(message: impl Into<String>) -> anyhow::Error {
    UsageError(message.into()).into()
}

pub fn resources(dir: Option<&Path>) -> Result<Resources> {
    match dir {
        Some(d) => Resources::from_dir(d).with_context(|| format!("loading resources from {}", d.display())),
        None => Ok(Resources::bundled()),
    }
}

fn load_victim(name: &str) -> Result<Victim> {
    Ok(match name {
        bundled::SENTIMENT_ID => Victim::classifier(bundled::sentiment_classifier()),
        bundled::TRANSLATOR_ID => Victim::text_to_text(bundled::translator()),
        path if path.ends_with(".tsv") => Victim::text_to_text(
            DictionaryTranslator::load(path).with_context(|| format!("loading translator {path}"))?,
        ),
        path => Victim::classifier(LinearTextClassifier::load(path).with_context(|| format!("loading model {path}"))?),
    })
}

/// The victim and dataset for a task, falling back to bundled ones.
fn victim_and_data(args: &ModelArgs, task: Task, num_examples: Option<usize>) -> Result<(Victim, Dataset)> {
    let default_model = match task {
        Task::Classification => bundled::SENTIMENT_ID,
        Task::TextToText => bundled::TRANSLATOR_ID,
    };
    let victim = load_victim(args.model.as_deref().unwrap_or(default_model))?;
    let data = match &args.dataset {
        Some(p) => Dataset::load(p).with_context(|| format!("loading dataset {}", p.display()))?,
        None => match task {
            Task::Classification => Dataset::bundled_sentiment_test(),
            Task::TextToText => Dataset::bundled_translation(),
        },
    };
    let data = match num_examples {
        Some(n) => data.truncated(n),
        None => data,
    };
    Ok((victim, data))
}

fn attack_spec(args: &AttackArgs) -> Result<AttackSpec> {
    if let Some(name) = &args.recipe {
        return Ok(recipe_spec(name)?);
    }
    if let Some(path) = &args.attack_file {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(parse_prototype(&text)?.0);
    }
    let token = |t: &str| Component::from_token(t).map_err(|e| usage(e.to_string()));
    let transformation = match args.transformation.as_slice() {
        [] => bail!(usage("component flags need at least one --transformation")),
        [one] => token(one)?,
        many => many
            .iter()
            .map(|t| token(t))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(Component::new("CompositeTransformation"), Component::with_child),
    };
    Ok(AttackSpec {
        search_method: token(args.search_method.as_deref().unwrap_or("greedy-wir"))?,
        goal_function: token(args.goal_function.as_deref().unwrap_or("untargeted-classification"))?,
        transformation,
        constraints: args.constraints.iter().map(|t| token(t)).collect::<Result<_>>()?,
    })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

fn writers<'a>(args: &AttackArgs) -> Result<Fanout<'a>> {
    let mut fan = Fanout::new();
    if !args.quiet {
        let out = io::stdout();
        if !args.no_color && out.is_terminal() {
            fan.push(TextWriter::colored(out));
        } else {
            fan.push(TextWriter::plain(out));
        }
    }
    for spec in &args.log_to {
        let Some((format, path)) = spec.split_once('=') else {
            bail!(usage(format!("--log-to expects FORMAT=PATH, got `{spec}`")));
        };
        let path = PathBuf::from(path);
        match format {
            "txt" => fan.push(TextWriter::plain(create(&path)?)),
            "csv" => fan.push(CsvWriter::new(create(&path)?)?),
            "html" => fan.push(HtmlWriter::new(create(&path)?)?),
            "jsonl" | "json" => fan.push(JsonlWriter::new(create(&path)?)),
            other => bail!(usage(format!("unknown log format `{other}`, expected txt, csv, html or jsonl"))),
        }
    }
    Ok(fan)
}

pub fn attack(args: &AttackArgs, res: &Resources) -> Result<()> {
    let spec = attack_spec(args)?;
    let task = build_goal(&spec.goal_function)?.task();
    let (victim, data) = victim_and_data(&args.model, task, args.num_examples)?;
    let attack = build_attack(&spec, res, victim)?
        .with_cache(!args.no_cache)
        .with_query_budget(args.query_budget);
    let mut fan = writers(args)?;
    if args.print_prototype {
        println!("{}", attack.prototype());
    }
    let (results, summary) = attack.attack_dataset(&data.examples, args.seed)?;
    for (i, r) in results.iter().enumerate() {
        fan.write_result(i, r)?;
    }
    fan.finish(&summary)?;
    if args.quiet {
        println!("{summary}");
    }
    Ok(())
}

pub fn augment(args: &AugmentArgs, res: &Resources) -> Result<()> {
    let augmenter = Augmenter::recipe(
        &args.recipe,
        res,
        normalize_pct(args.pct_words_to_swap),
        args.transformations_per_example,
    )?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter_for(&args.csv))
        .from_path(&args.csv)
        .with_context(|| format!("reading {}", args.csv.display()))?;
    let header = reader.headers()?.clone();
    let Some(column) = header.iter().position(|h| h == args.input_column) else {
        bail!(usage(format!("{} has no column `{}`", args.csv.display(), args.input_column)));
    };
    let out: Box<dyn Write> = match &args.output {
        Some(p) => Box::new(create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut writer = csv::WriterBuilder::new().delimiter(delimiter_for(args.output.as_deref().unwrap_or(&args.csv))).from_writer(out);
    writer.write_record(&header)?;
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let text = row.get(column).unwrap_or_default();
        if !args.exclude_original {
            writer.write_record(&row)?;
        }
        for t in augmenter.augment_indexed(text, args.seed, i as u64)? {
            if args.exclude_original && t == text {
                continue;
            }
            writer.write_record(row.iter().enumerate().map(|(j, f)| if j == column { t.as_str() } else { f }))?;
        }
    }
    writer.flush()?;
    Ok(())
}

fn label_names(n: usize) -> Vec<String> {
    (0..n.max(2)).map(|i| i.to_string()).collect()
}

pub fn train_cmd(args: &TrainArgs, res: &Resources) -> Result<()> {
    if args.model != "linear" {
        bail!(usage(format!("unknown model family `{}`, only `linear` is available", args.model)));
    }
    let (train_set, dev_set) = match &args.dataset {
        Some(p) => (
            Dataset::load(p).with_context(|| format!("loading dataset {}", p.display()))?,
            args.dev.as_ref().map(Dataset::load).transpose()?,
        ),
        None => (
            Dataset::bundled_sentiment_train(),
            Some(match &args.dev {
                Some(p) => Dataset::load(p)?,
                None => Dataset::bundled_sentiment_test(),
            }),
        ),
    };
    let num_labels = train_set.num_labels().max(dev_set.as_ref().map_or(0, Dataset::num_labels));
    let config = TrainConfig {
        epochs: args.epochs,
        learning_rate: args.learning_rate,
        batch_size: args.batch_size,
        seed: args.seed,
        early_stopping_patience: args.early_stopping_patience,
        features: if args.bag_of_words { FeatureConfig::bag_of_words() } else { FeatureConfig::default() },
    };
    let mut plan = TrainingPlan::new(config, label_names(num_labels));
    plan.num_clean_epochs = args.num_clean_epochs;
    plan.attack_period = args.attack_period;
    if let Some(recipe) = &args.augment {
        plan.augmenter = Some(Augmenter::recipe(
            recipe,
            res,
            normalize_pct(args.pct_words_to_swap),
            args.transformations_per_example,
        )?);
    }
    if let Some(recipe) = &args.attack {
        recipe_spec(recipe)?;
        plan.attack = Some(recipe_factory(recipe, res.clone()));
    }
    let report = train(&plan, &train_set.examples, dev_set.as_ref().map(|d| d.examples.as_slice()))?;
    let mut history_out = args.history.as_deref().map(create).transpose()?;
    for h in &report.history {
        let dev = h.dev_accuracy.map(|a| format!(" dev_acc={:.4}", a)).unwrap_or_default();
        let adv = h.adversarial_examples.map(|n| format!(" adversarial={n}")).unwrap_or_default();
        println!("epoch {:>3} loss={:.4} train_acc={:.4}{dev}{adv}", h.epoch, h.train_loss, h.train_accuracy);
        if let Some(out) = history_out.as_mut() {
            serde_json::to_writer(&mut *out, h)?;
            writeln!(out)?;
        }
    }
    if let Some(out) = history_out.as_mut() {
        out.flush()?;
    }
    if let Some(e) = &report.evaluation {
        println!("clean accuracy: {:.4}", e.clean_accuracy);
        if let Some(a) = e.accuracy_under_attack {
            println!("accuracy under attack: {a:.4}");
        }
    }
    if let Some(p) = &args.output {
        report.model.save(p).with_context(|| format!("saving model to {}", p.display()))?;
        println!("saved model to {}", p.display());
    }
    Ok(())
}

pub fn eval(args: &EvalArgs) -> Result<()> {
    let (victim, data) = victim_and_data(&args.model, Task::Classification, args.num_examples)?;
    let labeled = data.labeled()?;
    if labeled.is_empty() {
        bail!(advtext::Error::EmptyDataset);
    }
    let texts: Vec<String> = labeled.iter().map(|(t, _)| t.clone()).collect();
    let outputs = victim.query(&texts);
    let correct = outputs
        .iter()
        .zip(&labeled)
        .filter(|(o, (_, y))| o.scores().map(advtext::model::argmax) == Some(*y))
        .count();
    println!("examples: {}", labeled.len());
    println!("accuracy: {:.4}", correct as f64 / labeled.len() as f64);
    Ok(())
}

pub fn list_recipes(args: &ListArgs, res: &Resources) -> Result<()> {
    let mut out = io::stdout().lock();
    if args.prototypes {
        for name in RECIPES {
            let spec = recipe_spec(name)?;
            let task = build_goal(&spec.goal_function)?.task();
            let victim = match task {
                Task::Classification => Victim::classifier(bundled::sentiment_classifier()),
                Task::TextToText => Victim::text_to_text(bundled::translator()),
            };
            writeln!(out, "{name}\n{}\n", build_attack(&spec, res, victim)?.prototype())?;
        }
        return Ok(());
    }
    writeln!(out, "attack recipes:")?;
    for name in RECIPES {
        writeln!(out, "  {name}")?;
    }
    writeln!(out, "augmentation recipes:")?;
    for name in AUGMENT_RECIPES {
        writeln!(out, "  {name}")?;
    }
    Ok(())
}
