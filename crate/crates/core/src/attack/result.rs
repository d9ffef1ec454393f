use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::goal::GoalFunctionResult;
use crate::model::ModelOutput;
use crate::text::AttackedText;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AttackStatus {
    Successful,
    Failed,
    /// The victim was already wrong on the original input.
    Skipped,
    /// A maximizing goal finished without its score reaching a target.
    Maximized,
}

impl AttackStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            AttackStatus::Successful => "Successful",
            AttackStatus::Failed => "Failed",
            AttackStatus::Skipped => "Skipped",
            AttackStatus::Maximized => "Maximized",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            AttackStatus::Successful,
            AttackStatus::Failed,
            AttackStatus::Skipped,
            AttackStatus::Maximized,
        ]
        .into_iter()
        .find(|st| st.as_str().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for AttackStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of attacking one example. Equality ignores `elapsed`.
#[derive(Clone, Debug)]
pub struct AttackResult {
    pub status: AttackStatus,
    pub original: AttackedText,
    pub perturbed: AttackedText,
    pub original_output: ModelOutput,
    pub perturbed_output: ModelOutput,
    pub original_score: f64,
    pub perturbed_score: f64,
    pub ground_truth: Option<usize>,
    pub num_queries: usize,
    pub elapsed: Duration,
}

impl PartialEq for AttackResult {
    fn eq(&self, other: &Self) -> bool {
        self.status == other.status
            && self.original == other.original
            && self.perturbed == other.perturbed
            && self.original_output == other.original_output
            && self.perturbed_output == other.perturbed_output
            && self.original_score.to_bits() == other.original_score.to_bits()
            && self.perturbed_score.to_bits() == other.perturbed_score.to_bits()
            && self.ground_truth == other.ground_truth
            && self.num_queries == other.num_queries
    }
}

impl AttackResult {
    pub(crate) fn new(
        status: AttackStatus,
        initial: &GoalFunctionResult,
        last: &GoalFunctionResult,
        ground_truth: Option<usize>,
        started: Instant,
    ) -> Self {
        AttackResult {
            status,
            original: initial.text.clone(),
            perturbed: last.text.clone(),
            original_output: initial.output.clone(),
            perturbed_output: last.output.clone(),
            original_score: initial.score,
            perturbed_score: last.score,
            ground_truth,
            num_queries: last.num_queries,
            elapsed: started.elapsed(),
        }
    }

    /// Aligned word positions that differ between original and perturbed text.
    pub fn words_perturbed(&self) -> usize {
        AttackedText::words_changed(&self.original, &self.perturbed)
    }

    pub fn summary_row(&self) -> SummaryRow {
        SummaryRow {
            status: self.status,
            words_perturbed: self.words_perturbed(),
            original_num_words: self.original.num_words(),
            num_queries: self.num_queries,
        }
    }
}

/// The per-result facts an [`AttackSummary`] is computed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub status: AttackStatus,
    pub words_perturbed: usize,
    pub original_num_words: usize,
    pub num_queries: usize,
}

/// Aggregate statistics over a run.
///
/// Rates are fractions in `[0, 1]`. Skipped examples count towards the
/// totals and accuracies but not towards the success rate or mean queries.
/// When no attack succeeded or failed, the success rate is reported as 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackSummary {
    pub total: usize,
    pub successful: usize,
    pub failed: usize,
    pub skipped: usize,
    pub maximized: usize,
    pub original_accuracy: f64,
    pub accuracy_under_attack: f64,
    pub success_rate: f64,
    /// Mean percentage of words changed, over successful attacks.
    pub mean_perturbed_word_percent: f64,
    pub mean_words_per_input: f64,
    /// Mean queries over examples that were not skipped.
    pub mean_queries: f64,
}

impl AttackSummary {
    pub fn from_results(results: &[AttackResult]) -> Self {
        Self::from_rows(results.iter().map(AttackResult::summary_row))
    }

    pub fn from_rows(rows: impl IntoIterator<Item = SummaryRow>) -> Self {
        let rows: Vec<SummaryRow> = rows.into_iter().collect();
        let count = |s: AttackStatus| rows.iter().filter(|r| r.status == s).count();
        let total = rows.len();
        let successful = count(AttackStatus::Successful);
        let failed = count(AttackStatus::Failed);
        let skipped = count(AttackStatus::Skipped);
        let maximized = count(AttackStatus::Maximized);
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let mean = |xs: Vec<f64>| if xs.is_empty() { 0.0 } else { xs.iter().sum::<f64>() / xs.len() as f64 };
        let perturbed_pct = rows
            .iter()
            .filter(|r| r.status == AttackStatus::Successful)
            .map(|r| 100.0 * ratio(r.words_perturbed, r.original_num_words))
            .collect();
        let queries = rows
            .iter()
            .filter(|r| r.status != AttackStatus::Skipped)
            .map(|r| r.num_queries as f64)
            .collect();
        AttackSummary {
            total,
            successful,
            failed,
            skipped,
            maximized,
            original_accuracy: ratio(total - skipped, total),
            accuracy_under_attack: ratio(failed + maximized, total),
            success_rate: ratio(successful, successful + failed),
            mean_perturbed_word_percent: mean(perturbed_pct),
            mean_words_per_input: mean(rows.iter().map(|r| r.original_num_words as f64).collect()),
            mean_queries: mean(queries),
        }
    }
}

impl fmt::Display for AttackSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Number of successful attacks: {}", self.successful)?;
        writeln!(f, "Number of failed attacks:     {}", self.failed)?;
        writeln!(f, "Number of skipped attacks:    {}", self.skipped)?;
        if self.maximized > 0 {
            writeln!(f, "Number of maximized attacks:  {}", self.maximized)?;
        }
        writeln!(f, "Original accuracy:            {:.2}%", 100.0 * self.original_accuracy)?;
        writeln!(f, "Accuracy under attack:        {:.2}%", 100.0 * self.accuracy_under_attack)?;
        writeln!(f, "Attack success rate:          {:.2}%", 100.0 * self.success_rate)?;
        writeln!(f, "Average perturbed word %:     {:.2}%", self.mean_perturbed_word_percent)?;
        writeln!(f, "Average words per input:      {:.2}", self.mean_words_per_input)?;
        write!(f, "Average queries:              {:.2}", self.mean_queries)
    }
}
