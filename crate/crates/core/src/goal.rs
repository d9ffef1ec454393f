//! Goal functions: when is an attack done, and how close is a candidate?

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::component::Component;
use crate::error::{Error, Result};
use crate::metrics::{bleu, metric_tokens};
use crate::model::{argmax, ModelOutput};
use crate::text::AttackedText;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GoalStatus {
    Succeeded,
    Searching,
    Maximizing,
}

/// A scored candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct GoalFunctionResult {
    pub text: AttackedText,
    pub output: ModelOutput,
    /// In `[0, 1]`; higher is closer to the goal.
    pub score: f64,
    pub status: GoalStatus,
    /// Queries spent on this example once this result was produced.
    pub num_queries: usize,
}

/// What kind of victim a goal function needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Classification,
    TextToText,
}

/// Per-example facts the goal is measured against.
#[derive(Clone, Debug, PartialEq)]
pub struct GoalContext {
    pub ground_truth: Option<usize>,
    pub original_output: ModelOutput,
    pub original_num_words: usize,
}

impl GoalContext {
    /// The ground truth when known, otherwise the original prediction.
    pub fn reference_label(&self) -> Option<usize> {
        self.ground_truth.or_else(|| self.original_output.scores().map(argmax))
    }
}

pub trait GoalFunction: Send + Sync + fmt::Debug {
    fn describe(&self) -> Component;

    fn task(&self) -> Task;

    fn maximizable(&self) -> bool {
        false
    }

    /// Rejects examples the goal cannot be posed for.
    fn validate(&self, _ctx: &GoalContext) -> Result<()> {
        Ok(())
    }

    fn score(&self, ctx: &GoalContext, text: &AttackedText, output: &ModelOutput) -> Result<(f64, GoalStatus)>;
}

fn probabilities(output: &ModelOutput) -> Result<&[f64]> {
    let p = output
        .scores()
        .ok_or_else(|| Error::MalformedOutput("expected a score vector, got text".into()))?;
    if p.is_empty() || p.iter().any(|x| !x.is_finite()) {
        return Err(Error::MalformedOutput(format!("invalid score vector {p:?}")));
    }
    Ok(p)
}

fn output_text(output: &ModelOutput) -> Result<&str> {
    output
        .text()
        .ok_or_else(|| Error::MalformedOutput("expected output text, got scores".into()))
}

fn label_in_range(label: usize, p: &[f64]) -> Result<()> {
    if label < p.len() {
        Ok(())
    } else {
        Err(Error::MalformedOutput(format!("label {label} outside a {}-way output", p.len())))
    }
}

/// Push the ground-truth probability down until another label wins.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UntargetedClassification;

impl GoalFunction for UntargetedClassification {
    fn describe(&self) -> Component {
        Component::new("UntargetedClassification")
    }

    fn task(&self) -> Task {
        Task::Classification
    }

    fn score(&self, ctx: &GoalContext, _text: &AttackedText, output: &ModelOutput) -> Result<(f64, GoalStatus)> {
        let p = probabilities(output)?;
        let truth = ctx
            .reference_label()
            .ok_or_else(|| Error::config("untargeted goal needs a label"))?;
        label_in_range(truth, p)?;
        let status = if argmax(p) != truth {
            GoalStatus::Succeeded
        } else {
            GoalStatus::Searching
        };
        Ok(((1.0 - p[truth]).clamp(0.0, 1.0), status))
    }
}

/// Push a chosen wrong label to the top.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetedClassification {
    pub target_class: usize,
}

impl GoalFunction for TargetedClassification {
    fn describe(&self) -> Component {
        Component::new("TargetedClassification").with("target_class", self.target_class)
    }

    fn task(&self) -> Task {
        Task::Classification
    }

    fn validate(&self, ctx: &GoalContext) -> Result<()> {
        if ctx.ground_truth == Some(self.target_class) {
            return Err(Error::config(format!(
                "target class {} equals the ground truth",
                self.target_class
            )));
        }
        Ok(())
    }

    fn score(&self, _ctx: &GoalContext, _text: &AttackedText, output: &ModelOutput) -> Result<(f64, GoalStatus)> {
        let p = probabilities(output)?;
        label_in_range(self.target_class, p)?;
        let status = if argmax(p) == self.target_class {
            GoalStatus::Succeeded
        } else {
            GoalStatus::Searching
        };
        Ok((p[self.target_class].clamp(0.0, 1.0), status))
    }
}

/// Delete as many words as possible while the predicted label holds.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InputReduction;

impl GoalFunction for InputReduction {
    fn describe(&self) -> Component {
        Component::new("InputReduction").with("maximizable", true)
    }

    fn task(&self) -> Task {
        Task::Classification
    }

    fn maximizable(&self) -> bool {
        true
    }

    fn score(&self, ctx: &GoalContext, text: &AttackedText, output: &ModelOutput) -> Result<(f64, GoalStatus)> {
        let p = probabilities(output)?;
        let original = probabilities(&ctx.original_output)?;
        if argmax(p) != argmax(original) {
            return Ok((0.0, GoalStatus::Searching));
        }
        let n0 = ctx.original_num_words;
        let score = if n0 == 0 {
            0.0
        } else {
            n0.saturating_sub(text.num_words()) as f64 / n0 as f64
        };
        Ok((score, GoalStatus::Maximizing))
    }
}

/// Fraction of the original output's words (as a multiset) still present.
pub fn word_overlap(original: &str, current: &str) -> f64 {
    let orig = metric_tokens(original);
    if orig.is_empty() {
        return 0.0;
    }
    let mut counts: HashMap<String, usize> = HashMap::new();
    for w in metric_tokens(current) {
        *counts.entry(w).or_insert(0) += 1;
    }
    let mut shared = 0;
    for w in &orig {
        if let Some(c) = counts.get_mut(w) {
            if *c > 0 {
                *c -= 1;
                shared += 1;
            }
        }
    }
    shared as f64 / orig.len() as f64
}

/// Change the output so it shares no words with the original output.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NonOverlappingOutput;

impl GoalFunction for NonOverlappingOutput {
    fn describe(&self) -> Component {
        Component::new("NonOverlappingOutput")
    }

    fn task(&self) -> Task {
        Task::TextToText
    }

    fn score(&self, ctx: &GoalContext, _text: &AttackedText, output: &ModelOutput) -> Result<(f64, GoalStatus)> {
        let overlap = word_overlap(output_text(&ctx.original_output)?, output_text(output)?);
        let status = if overlap == 0.0 {
            GoalStatus::Succeeded
        } else {
            GoalStatus::Searching
        };
        Ok((1.0 - overlap, status))
    }
}

/// Drive the BLEU score against the original output down to a target.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimizeBleu {
    pub target_bleu: f64,
    pub maximizable: bool,
}

impl Default for MinimizeBleu {
    fn default() -> Self {
        MinimizeBleu {
            target_bleu: 0.0,
            maximizable: false,
        }
    }
}

impl GoalFunction for MinimizeBleu {
    fn describe(&self) -> Component {
        Component::new("MinimizeBleu")
            .with("maximizable", self.maximizable)
            .with("target_bleu", self.target_bleu)
    }

    fn task(&self) -> Task {
        Task::TextToText
    }

    fn maximizable(&self) -> bool {
        self.maximizable
    }

    fn score(&self, ctx: &GoalContext, _text: &AttackedText, output: &ModelOutput) -> Result<(f64, GoalStatus)> {
        let b = bleu(output_text(output)?, output_text(&ctx.original_output)?);
        let status = if self.maximizable {
            GoalStatus::Maximizing
        } else if b <= self.target_bleu {
            GoalStatus::Succeeded
        } else {
            GoalStatus::Searching
        };
        Ok(((1.0 - b).clamp(0.0, 1.0), status))
    }
}
