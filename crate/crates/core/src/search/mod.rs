//! Search methods: strategies for walking the space of transformations.

mod beam;
mod genetic;
mod greedy_wir;
mod pso;

pub use beam::BeamSearch;
pub use genetic::{selection_probabilities, GaVariant, GeneticAlgorithm};
pub use greedy_wir::{GreedyWordSwapWir, WirMethod};
pub use pso::ParticleSwarmOptimization;

use std::fmt;

use rand::Rng;

use crate::attack::SearchContext;
use crate::component::Component;
use crate::error::Result;
use crate::goal::GoalFunctionResult;

pub trait SearchMethod: Send + Sync + fmt::Debug {
    fn describe(&self) -> Component;

    /// Searches from the unperturbed `initial` result and returns the best
    /// result found. Every returned text passed the attack's constraints.
    fn search(&self, ctx: &mut SearchContext<'_>, initial: GoalFunctionResult) -> Result<GoalFunctionResult>;

    fn is_black_box(&self) -> bool {
        true
    }

    /// Whether the method aligns texts position by position and so needs
    /// transformations that only substitute words.
    fn requires_substitution(&self) -> bool {
        false
    }
}

/// First result with the highest score.
pub(crate) fn best_of(results: &[GoalFunctionResult]) -> Option<&GoalFunctionResult> {
    results.iter().fold(None, |best: Option<&GoalFunctionResult>, r| match best {
        Some(b) if b.score >= r.score => Some(b),
        _ => Some(r),
    })
}

/// Samples an index with probability proportional to `weights`. Returns
/// `None` when no weight is positive.
pub fn weighted_index<R: Rng>(weights: &[f64], rng: &mut R) -> Option<usize> {
    let total: f64 = weights.iter().filter(|w| **w > 0.0).sum();
    if total <= 0.0 || !total.is_finite() {
        return None;
    }
    let mut x = rng.gen::<f64>() * total;
    let mut last = None;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        last = Some(i);
        if x < w {
            return Some(i);
        }
        x -= w;
    }
    last
}
