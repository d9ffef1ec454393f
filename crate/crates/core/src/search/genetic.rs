use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{best_of, weighted_index, SearchMethod};
use crate::attack::SearchContext;
use crate::component::Component;
use crate::error::Result;
use crate::goal::{GoalFunctionResult, GoalStatus};
use crate::model::softmax;
use crate::text::AttackedText;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaVariant {
    /// Uniform word-wise crossover; the elite is carried over unchanged.
    Alzantot,
    /// Single-cut crossover; the elite is mutated too.
    Improved,
}

/// Population search over word substitutions.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneticAlgorithm {
    pub pop_size: usize,
    pub max_iters: usize,
    pub temp: f64,
    pub give_up_if_no_improvement: bool,
    pub variant: GaVariant,
}

impl GeneticAlgorithm {
    pub fn alzantot() -> Self {
        GeneticAlgorithm {
            pop_size: 60,
            max_iters: 20,
            temp: 0.3,
            give_up_if_no_improvement: false,
            variant: GaVariant::Alzantot,
        }
    }

    pub fn improved() -> Self {
        GeneticAlgorithm {
            variant: GaVariant::Improved,
            ..Self::alzantot()
        }
    }
}

#[derive(Clone, Debug)]
struct Member {
    result: GoalFunctionResult,
    /// Per word index: how worthwhile perturbing it still looks.
    weights: Vec<f64>,
}

/// Parent selection probabilities: a softmax of scores divided by `temp`.
pub fn selection_probabilities(scores: &[f64], temp: f64) -> Vec<f64> {
    let logits: Vec<f64> = scores.iter().map(|s| s / temp).collect();
    softmax(&logits)
}

impl GeneticAlgorithm {
    /// Replaces one word, chosen in proportion to the member's weights, by
    /// its best candidate if that raises the score. Without
    /// `give_up_if_no_improvement`, an index that cannot improve is ruled
    /// out and another is tried until none remain.
    fn perturb(&self, ctx: &mut SearchContext<'_>, member: Member) -> Result<(Member, bool)> {
        let mut weights = member.weights.clone();
        loop {
            let Some(index) = weighted_index(&weights, ctx.rng()) else {
                return Ok((member, false));
            };
            let cands = ctx.candidates(&member.result.text, Some(&BTreeSet::from([index])))?;
            if !cands.is_empty() {
                let (results, over) = ctx.evaluate(&cands)?;
                if let Some(best) = best_of(&results) {
                    if best.score > member.result.score {
                        return Ok((
                            Member {
                                result: best.clone(),
                                weights,
                            },
                            over,
                        ));
                    }
                }
                if over {
                    return Ok((member, true));
                }
            }
            if self.give_up_if_no_improvement {
                return Ok((member, false));
            }
            weights[index] = 0.0;
        }
    }

    fn crossover(&self, a: &AttackedText, b: &AttackedText, rng: &mut ChaCha8Rng) -> Result<AttackedText> {
        let n = a.num_words().min(b.num_words());
        let mut edits: Vec<(usize, &str)> = Vec::new();
        match self.variant {
            GaVariant::Alzantot => {
                for i in 0..n {
                    let take_b = rng.gen_bool(0.5);
                    if take_b && a.words()[i] != b.words()[i] {
                        edits.push((i, b.words()[i].as_str()));
                    }
                }
            }
            GaVariant::Improved => {
                let cut = if n == 0 { 0 } else { rng.gen_range(0..n) };
                for i in cut..n {
                    if a.words()[i] != b.words()[i] {
                        edits.push((i, b.words()[i].as_str()));
                    }
                }
            }
        }
        if edits.is_empty() {
            Ok(a.clone())
        } else {
            a.replace_words_at(&edits)
        }
    }
}

fn sort_population(pop: &mut [Member]) {
    pop.sort_by(|a, b| b.result.score.total_cmp(&a.result.score));
}

fn best_member(pop: &[Member]) -> Option<GoalFunctionResult> {
    let results: Vec<GoalFunctionResult> = pop.iter().map(|m| m.result.clone()).collect();
    best_of(&results).cloned()
}

impl SearchMethod for GeneticAlgorithm {
    fn describe(&self) -> Component {
        let name = match self.variant {
            GaVariant::Alzantot => "GeneticAlgorithm",
            GaVariant::Improved => "ImprovedGeneticAlgorithm",
        };
        Component::new(name)
            .with("pop_size", self.pop_size)
            .with("max_iters", self.max_iters)
            .with("temp", self.temp)
            .with("give_up_if_no_improvement", self.give_up_if_no_improvement)
    }

    fn search(&self, ctx: &mut SearchContext<'_>, initial: GoalFunctionResult) -> Result<GoalFunctionResult> {
        let text = initial.text.clone();
        let mut weights = vec![0.0; text.num_words()];
        for i in ctx.allowed_indices(&text) {
            weights[i] = ctx.candidates(&text, Some(&BTreeSet::from([i])))?.len() as f64;
        }
        if weights.iter().all(|&w| w == 0.0) || self.pop_size == 0 {
            return Ok(initial);
        }
        let seed = Member {
            result: initial.clone(),
            weights,
        };
        let mut pop = Vec::with_capacity(self.pop_size);
        for _ in 0..self.pop_size {
            let (m, over) = self.perturb(ctx, seed.clone())?;
            pop.push(m);
            if over {
                return Ok(best_member(&pop).unwrap_or(initial));
            }
        }
        for _ in 0..self.max_iters {
            sort_population(&mut pop);
            if pop[0].result.status == GoalStatus::Succeeded {
                break;
            }
            let scores: Vec<f64> = pop.iter().map(|m| m.result.score).collect();
            let probs = selection_probabilities(&scores, self.temp);
            let mut children = Vec::with_capacity(self.pop_size - 1);
            let mut parents = Vec::with_capacity(self.pop_size - 1);
            for _ in 1..self.pop_size {
                let p1 = weighted_index(&probs, ctx.rng()).unwrap_or(0);
                let p2 = weighted_index(&probs, ctx.rng()).unwrap_or(0);
                let child = self.crossover(&pop[p1].result.text, &pop[p2].result.text, ctx.rng())?;
                let child = if ctx.passes_constraints(&pop[p1].result.text, &child) {
                    child
                } else {
                    pop[p1].result.text.clone()
                };
                children.push(child);
                parents.push(p1);
            }
            let (results, over) = ctx.evaluate(&children)?;
            if over {
                let mut seen: Vec<GoalFunctionResult> = pop.iter().map(|m| m.result.clone()).collect();
                seen.extend(results);
                return Ok(best_of(&seen).cloned().unwrap_or(initial));
            }
            let mut next = Vec::with_capacity(self.pop_size);
            let elite = pop[0].clone();
            let elite = match self.variant {
                GaVariant::Alzantot => elite,
                GaVariant::Improved => {
                    let (m, over) = self.perturb(ctx, elite)?;
                    if over {
                        next.push(m);
                        next.extend(pop.drain(..));
                        return Ok(best_member(&next).unwrap_or(initial));
                    }
                    m
                }
            };
            next.push(elite);
            for (result, p1) in results.into_iter().zip(parents) {
                let child = Member {
                    result,
                    weights: pop[p1].weights.clone(),
                };
                let (m, over) = self.perturb(ctx, child)?;
                next.push(m);
                if over {
                    next.extend(pop.drain(..));
                    return Ok(best_member(&next).unwrap_or(initial));
                }
            }
            pop = next;
        }
        Ok(best_member(&pop).unwrap_or(initial))
    }

    fn requires_substitution(&self) -> bool {
        true
    }
}
