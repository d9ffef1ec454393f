//! Attack assembly and execution.
//!
//! An [`Attack`] binds a goal function, an ordered constraint list, a
//! transformation and a search method to a victim. Each example gets its
//! own [`SearchContext`], which owns the query counter and the random stream
//! for that example, while victim outputs and constraint verdicts are shared
//! through one [`ResultCache`] per attack.

mod build;
mod cache;
mod context;
mod recipes;
mod result;

pub use build::{build_attack, build_constraint, build_goal, build_search, build_transformation};
pub use cache::{CacheStats, ResultCache};
pub use context::SearchContext;
pub use recipes::{build_recipe, recipe_names, recipe_spec, RECIPES};
pub use result::{AttackResult, AttackStatus, AttackSummary, SummaryRow};

use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::component::{render_prototype, AttackSpec};
use crate::constraints::ConstraintItem;
use crate::dataset::Example;
use crate::error::{Error, Result};
use crate::goal::{GoalContext, GoalFunction, GoalFunctionResult, GoalStatus, Task};
use crate::model::Victim;
use crate::search::SearchMethod;
use crate::transform::Transformation;

#[derive(Debug)]
pub struct Attack {
    goal: Arc<dyn GoalFunction>,
    constraints: Vec<ConstraintItem>,
    transformation: Arc<dyn Transformation>,
    search: Arc<dyn SearchMethod>,
    victim: Victim,
    cache: ResultCache,
    query_budget: Option<usize>,
}

impl Attack {
    /// Checks that the parts fit together and with the victim.
    pub fn new(
        goal: Arc<dyn GoalFunction>,
        constraints: Vec<ConstraintItem>,
        transformation: Arc<dyn Transformation>,
        search: Arc<dyn SearchMethod>,
        victim: Victim,
    ) -> Result<Self> {
        match (goal.task(), &victim) {
            (Task::Classification, Victim::Classifier(_)) | (Task::TextToText, Victim::TextToText(_)) => {}
            (task, v) => {
                return Err(Error::config(format!(
                    "goal function {} ({task:?}) cannot be used with victim {}",
                    goal.describe().name,
                    v.id()
                )))
            }
        }
        if (!transformation.is_black_box() || !search.is_black_box()) && victim.white_box().is_none() {
            return Err(Error::NotWhiteBox(victim.id().to_string()));
        }
        if search.requires_substitution() && !transformation.substitutes_only() {
            return Err(Error::config(format!(
                "{} needs a substitution-only transformation, got {}",
                search.describe().name,
                transformation.describe().name
            )));
        }
        Ok(Attack {
            goal,
            constraints,
            transformation,
            search,
            victim,
            cache: ResultCache::new(true),
            query_budget: None,
        })
    }

    /// Replaces the cache with a fresh one.
    pub fn with_cache(mut self, enabled: bool) -> Self {
        self.cache = ResultCache::new(enabled);
        self
    }

    pub fn with_query_budget(mut self, budget: Option<usize>) -> Self {
        self.query_budget = budget;
        self
    }

    pub fn goal(&self) -> &dyn GoalFunction {
        self.goal.as_ref()
    }

    pub fn constraints(&self) -> &[ConstraintItem] {
        &self.constraints
    }

    pub fn transformation(&self) -> &dyn Transformation {
        self.transformation.as_ref()
    }

    pub fn search_method(&self) -> &dyn SearchMethod {
        self.search.as_ref()
    }

    pub fn victim(&self) -> &Victim {
        &self.victim
    }

    pub fn query_budget(&self) -> Option<usize> {
        self.query_budget
    }

    pub fn cache(&self) -> &ResultCache {
        &self.cache
    }

    pub fn cache_stats(&self) -> CacheStats {
        self.cache.stats()
    }

    pub fn is_black_box(&self) -> bool {
        self.transformation.is_black_box() && self.search.is_black_box()
    }

    pub fn spec(&self) -> AttackSpec {
        AttackSpec {
            search_method: self.search.describe(),
            goal_function: self.goal.describe(),
            transformation: self.transformation.describe(),
            constraints: self.constraints.iter().map(ConstraintItem::describe).collect(),
        }
    }

    /// The `Attack(...)` listing of every component and parameter.
    pub fn prototype(&self) -> String {
        render_prototype(&self.spec(), self.is_black_box())
    }

    /// Attacks one example. `seed` and `stream` select the random stream, so
    /// the outcome does not depend on which other examples run alongside.
    pub fn attack(&self, example: &Example, seed: u64, stream: u64) -> Result<AttackResult> {
        let started = Instant::now();
        let text = example.attacked_text();
        let printable = text.printable();
        let original_output = self
            .cache
            .outputs(std::slice::from_ref(&printable), |ts| context::query_victim(&self.victim, ts))?
            .remove(0);
        let goal_ctx = GoalContext {
            ground_truth: example.label,
            original_output: original_output.clone(),
            original_num_words: text.num_words(),
        };
        self.goal.validate(&goal_ctx)?;
        let (score, status) = self.goal.score(&goal_ctx, &text, &original_output)?;
        let initial = GoalFunctionResult {
            text: text.clone(),
            output: original_output,
            score,
            status,
            num_queries: 1,
        };
        if status == GoalStatus::Succeeded {
            return Ok(AttackResult::new(AttackStatus::Skipped, &initial, &initial, example.label, started));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut ctx = SearchContext::new(self, goal_ctx, text, rng);
        let best = self.search.search(&mut ctx, initial.clone())?;
        let status = match best.status {
            GoalStatus::Succeeded => AttackStatus::Successful,
            GoalStatus::Maximizing if self.goal.maximizable() => AttackStatus::Maximized,
            _ => AttackStatus::Failed,
        };
        let mut result = AttackResult::new(status, &initial, &best, example.label, started);
        result.num_queries = ctx.queries();
        Ok(result)
    }

    /// Attacks every example in parallel; results come back in input order.
    /// Example `i` uses random stream `i` of `seed`.
    pub fn attack_dataset(&self, examples: &[Example], seed: u64) -> Result<(Vec<AttackResult>, AttackSummary)> {
        if examples.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let results = examples
            .par_iter()
            .enumerate()
            .map(|(i, e)| self.attack(e, seed, i as u64))
            .collect::<Result<Vec<_>>>()?;
        let summary = AttackSummary::from_results(&results);
        Ok((results, summary))
    }
}
