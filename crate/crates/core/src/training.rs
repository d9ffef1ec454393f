//! Clean, augmented and adversarial training of the linear classifier.
//!
//! Adversarial training runs `num_clean_epochs` epochs on the clean data,
//! then attacks every training example with the current model and trains
//! on the perturbed set instead. The perturbed set is regenerated every
//! `attack_period` epochs. Examples the attack fails on stay clean, and
//! labels are never changed.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::attack::{build_recipe, Attack, AttackStatus};
use crate::augment::Augmenter;
use crate::dataset::Example;
use crate::error::{Error, Result};
use crate::model::{LinearTextClassifier, TrainConfig, Trainer, Victim};
use crate::resources::Resources;

/// Builds an attack against the model as it currently stands.
pub type AttackFactory = Arc<dyn Fn(Victim) -> Result<Attack> + Send + Sync>;

/// An [`AttackFactory`] for a named recipe.
pub fn recipe_factory(name: &str, res: Resources) -> AttackFactory {
    let name = name.to_string();
    Arc::new(move |victim| build_recipe(&name, &res, victim))
}

pub const DEFAULT_ATTACK_PERIOD: usize = 20;

#[derive(Clone)]
pub struct TrainingPlan {
    pub config: TrainConfig,
    pub labels: Vec<String>,
    pub num_clean_epochs: usize,
    pub attack_period: usize,
    pub augmenter: Option<Augmenter>,
    pub attack: Option<AttackFactory>,
}

impl fmt::Debug for TrainingPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TrainingPlan")
            .field("config", &self.config)
            .field("labels", &self.labels)
            .field("num_clean_epochs", &self.num_clean_epochs)
            .field("attack_period", &self.attack_period)
            .field("augmenter", &self.augmenter.is_some())
            .field("attack", &self.attack.is_some())
            .finish()
    }
}

impl TrainingPlan {
    pub fn new(config: TrainConfig, labels: Vec<String>) -> Self {
        TrainingPlan {
            config,
            labels,
            num_clean_epochs: 0,
            attack_period: DEFAULT_ATTACK_PERIOD,
            augmenter: None,
            attack: None,
        }
    }

    /// Whether the adversarial set is rebuilt before 1-based `epoch`.
    pub fn regenerates_at(&self, epoch: usize) -> bool {
        self.attack.is_some()
            && epoch > self.num_clean_epochs
            && (epoch - self.num_clean_epochs - 1) % self.attack_period == 0
    }

    fn validate(&self) -> Result<()> {
        if self.num_clean_epochs > self.config.epochs {
            return Err(Error::config(format!(
                "num_clean_epochs ({}) exceeds epochs ({})",
                self.num_clean_epochs, self.config.epochs
            )));
        }
        if self.attack_period == 0 {
            return Err(Error::config("attack_period must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpochRecord {
    pub epoch: usize,
    pub train_loss: f64,
    pub train_accuracy: f64,
    pub dev_accuracy: Option<f64>,
    /// Examples replaced by a successful attack, when the adversarial set
    /// was rebuilt before this epoch.
    pub adversarial_examples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FinalEvaluation {
    pub clean_accuracy: f64,
    pub accuracy_under_attack: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct TrainingReport {
    pub model: LinearTextClassifier,
    pub history: Vec<EpochRecord>,
    pub regenerations: usize,
    pub evaluation: Option<FinalEvaluation>,
}

fn pairs(examples: &[Example]) -> Result<Vec<(String, usize)>> {
    examples
        .iter()
        .map(|e| {
            e.label
                .map(|l| (e.joined_text(), l))
                .ok_or_else(|| Error::config("training examples need labels"))
        })
        .collect()
}

/// Replaces each example by its successful adversarial version, if any.
pub fn adversarial_set(attack: &Attack, examples: &[Example], seed: u64) -> Result<(Vec<Example>, usize)> {
    let (results, _) = attack.attack_dataset(examples, seed)?;
    let mut replaced = 0;
    let out = examples
        .iter()
        .zip(results)
        .map(|(e, r)| {
            if r.status != AttackStatus::Successful {
                return e.clone();
            }
            replaced += 1;
            let text = r.perturbed.printable();
            let inputs = if e.inputs.len() == 1 {
                vec![(e.inputs[0].0.clone(), text)]
            } else {
                let parts: Vec<&str> = text.splitn(e.inputs.len(), crate::text::COLUMN_SEPARATOR).collect();
                e.inputs
                    .iter()
                    .zip(parts)
                    .map(|((c, _), p)| (c.clone(), p.to_string()))
                    .collect()
            };
            Example {
                inputs,
                label: e.label,
                reference: e.reference.clone(),
            }
        })
        .collect();
    Ok((out, replaced))
}

/// Runs the plan on `train`, evaluating on `dev` after each epoch and at
/// the end. Without augmentation or attack this is exactly
/// [`crate::model::fit`].
pub fn train(plan: &TrainingPlan, train: &[Example], dev: Option<&[Example]>) -> Result<TrainingReport> {
    plan.validate()?;
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let train: Vec<Example> = match &plan.augmenter {
        Some(a) => a.augment_dataset(train, plan.config.seed, false)?,
        None => train.to_vec(),
    };
    let clean = pairs(&train)?;
    let dev_pairs = dev.map(pairs).transpose()?;
    let mut trainer = Trainer::new(
        plan.labels.clone(),
        clean.iter().map(|(t, _)| t.as_str()),
        plan.config.clone(),
    )?;
    if let Some(factory) = &plan.attack {
        factory(Victim::classifier(trainer.model().clone()))?;
    }
    let mut data = clean.clone();
    let mut history = Vec::new();
    let mut regenerations = 0;
    let mut best: Option<(f64, LinearTextClassifier)> = None;
    let mut since_best = 0;
    for epoch in 1..=plan.config.epochs {
        let mut adversarial_examples = None;
        if plan.regenerates_at(epoch) {
            let factory = plan.attack.as_ref().expect("checked by regenerates_at");
            let attack = factory(Victim::classifier(trainer.model().clone()))?;
            let (adv, replaced) = adversarial_set(&attack, &train, plan.config.seed.wrapping_add(epoch as u64))?;
            data = pairs(&adv)?;
            adversarial_examples = Some(replaced);
            regenerations += 1;
        }
        let (train_loss, train_accuracy) = trainer.run_epoch(&data)?;
        let dev_accuracy = dev_pairs.as_deref().map(|d| trainer.model().accuracy(d));
        history.push(EpochRecord {
            epoch,
            train_loss,
            train_accuracy,
            dev_accuracy,
            adversarial_examples,
        });
        if let (Some(patience), Some(acc)) = (plan.config.early_stopping_patience, dev_accuracy) {
            if best.as_ref().map_or(true, |(b, _)| acc > *b) {
                best = Some((acc, trainer.model().clone()));
                since_best = 0;
            } else {
                since_best += 1;
                if since_best >= patience {
                    break;
                }
            }
        }
    }
    let model = match best {
        Some((_, m)) => m,
        None => trainer.into_model(),
    };
    let evaluation = match (dev, &dev_pairs) {
        (Some(dev), Some(dp)) => {
            let accuracy_under_attack = match &plan.attack {
                Some(factory) if !dev.is_empty() => {
                    let attack = factory(Victim::classifier(model.clone()))?;
                    Some(attack.attack_dataset(dev, plan.config.seed)?.1.accuracy_under_attack)
                }
                _ => None,
            };
            Some(FinalEvaluation {
                clean_accuracy: model.accuracy(dp),
                accuracy_under_attack,
            })
        }
        _ => None,
    };
    Ok(TrainingReport {
        model,
        history,
        regenerations,
        evaluation,
    })
}
