use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;

use super::Attack;
use crate::constraints::{self, ConstraintItem};
use crate::error::{Error, Result};
use crate::goal::{GoalContext, GoalFunctionResult};
use crate::model::{ModelOutput, Victim, WhiteBoxClassifier};
use crate::text::AttackedText;
use crate::transform::TransformContext;

pub(crate) fn query_victim(victim: &Victim, texts: &[String]) -> Result<Vec<ModelOutput>> {
    let out = victim.query(texts);
    if out.len() != texts.len() {
        return Err(Error::MalformedOutput(format!(
            "victim {} returned {} outputs for {} inputs",
            victim.id(),
            out.len(),
            texts.len()
        )));
    }
    Ok(out)
}

/// Everything a search method may touch while attacking one example.
///
/// Queries are counted per text evaluated, whether or not the cache
/// answered it, so budgets and reported counts do not depend on caching.
pub struct SearchContext<'a> {
    attack: &'a Attack,
    goal_ctx: GoalContext,
    original: AttackedText,
    rng: ChaCha8Rng,
    queries: usize,
}

impl<'a> SearchContext<'a> {
    pub(crate) fn new(attack: &'a Attack, goal_ctx: GoalContext, original: AttackedText, rng: ChaCha8Rng) -> Self {
        SearchContext {
            attack,
            goal_ctx,
            original,
            rng,
            queries: 1,
        }
    }

    pub fn original(&self) -> &AttackedText {
        &self.original
    }

    pub fn goal_context(&self) -> &GoalContext {
        &self.goal_ctx
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Queries spent so far, the initial prediction included.
    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn budget_exhausted(&self) -> bool {
        self.attack.query_budget.is_some_and(|b| self.queries >= b)
    }

    /// Label the attack works against.
    pub fn label(&self) -> Option<usize> {
        self.goal_ctx.reference_label()
    }

    pub fn white_box(&self) -> Option<&'a dyn WhiteBoxClassifier> {
        self.attack.victim.white_box()
    }

    /// Indices every pre-transformation constraint allows on `text`.
    pub fn allowed_indices(&self, text: &AttackedText) -> BTreeSet<usize> {
        constraints::allowed_indices(&self.attack.constraints, text)
    }

    /// Whether `candidate`, derived from `previous`, passes every pairwise
    /// constraint. Verdicts are cached per constraint.
    pub fn passes_constraints(&self, previous: &AttackedText, candidate: &AttackedText) -> bool {
        let cache = &self.attack.cache;
        self.attack.constraints.iter().enumerate().all(|(i, item)| match item {
            ConstraintItem::Pairwise(c) => {
                let reference = if c.compare_against_original() { &self.original } else { previous };
                cache.verdict(i, reference, candidate, || c.check(reference, candidate))
            }
            ConstraintItem::Pre(_) => true,
        })
    }

    /// Constraint-passing transformations of `current`, optionally limited to
    /// the indices in `restrict`.
    pub fn candidates(&mut self, current: &AttackedText, restrict: Option<&BTreeSet<usize>>) -> Result<Vec<AttackedText>> {
        let mut allowed = self.allowed_indices(current);
        if let Some(r) = restrict {
            allowed.retain(|i| r.contains(i));
        }
        if allowed.is_empty() {
            return Ok(Vec::new());
        }
        let label = self.label();
        let mut tctx = TransformContext {
            rng: &mut self.rng,
            victim: Some(&self.attack.victim),
            label,
        };
        let raw = self.attack.transformation.generate(current, &allowed, &mut tctx)?;
        Ok(raw.into_iter().filter(|c| self.passes_constraints(current, c)).collect())
    }

    /// Scores `texts` against the goal, in order. When the budget cannot
    /// cover all of them only a prefix is scored. The flag reports whether
    /// the budget is now used up.
    pub fn evaluate(&mut self, texts: &[AttackedText]) -> Result<(Vec<GoalFunctionResult>, bool)> {
        let room = match self.attack.query_budget {
            Some(b) => b.saturating_sub(self.queries),
            None => usize::MAX,
        };
        let take = texts.len().min(room);
        let texts = &texts[..take];
        let printables: Vec<String> = texts.iter().map(AttackedText::printable).collect();
        let victim = &self.attack.victim;
        let outputs = if printables.is_empty() {
            Vec::new()
        } else {
            self.attack.cache.outputs(&printables, |ts| query_victim(victim, ts))?
        };
        let mut results = Vec::with_capacity(take);
        for (text, output) in texts.iter().zip(outputs) {
            self.queries += 1;
            let (score, status) = self.attack.goal.score(&self.goal_ctx, text, &output)?;
            results.push(GoalFunctionResult {
                text: text.clone(),
                output,
                score,
                status,
                num_queries: self.queries,
            });
        }
        Ok((results, self.budget_exhausted()))
    }
}
