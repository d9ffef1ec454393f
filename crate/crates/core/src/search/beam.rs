use std::collections::HashSet;

use super::SearchMethod;
use crate::attack::SearchContext;
use crate::component::Component;
use crate::error::Result;
use crate::goal::{GoalFunctionResult, GoalStatus};

/// Beam search over single-step transformations.
///
/// Each round expands every beam member, scores the unseen candidates and
/// keeps the `beam_width` best (ties keep generation order). Texts already
/// visited are never re-expanded, so with an unbounded width the search
/// visits every reachable text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeamSearch {
    pub beam_width: usize,
    greedy: bool,
}

impl BeamSearch {
    pub fn new(beam_width: usize) -> Self {
        BeamSearch {
            beam_width: beam_width.max(1),
            greedy: false,
        }
    }

    /// Beam search of width one, listed as `GreedySearch`.
    pub fn greedy() -> Self {
        BeamSearch {
            beam_width: 1,
            greedy: true,
        }
    }
}

impl SearchMethod for BeamSearch {
    fn describe(&self) -> Component {
        if self.greedy {
            Component::new("GreedySearch")
        } else {
            Component::new("BeamSearch").with("beam_width", self.beam_width)
        }
    }

    fn search(&self, ctx: &mut SearchContext<'_>, initial: GoalFunctionResult) -> Result<GoalFunctionResult> {
        let mut visited = HashSet::from([initial.text.printable()]);
        let mut best = initial.clone();
        let mut beam = vec![initial];
        while best.status != GoalStatus::Succeeded && !ctx.budget_exhausted() {
            let mut pool = Vec::new();
            for member in &beam {
                pool.extend(ctx.candidates(&member.text, None)?);
            }
            pool.retain(|t| visited.insert(t.printable()));
            if pool.is_empty() {
                break;
            }
            let (mut results, over) = ctx.evaluate(&pool)?;
            results.sort_by(|a, b| b.score.total_cmp(&a.score));
            let hit = results
                .iter()
                .find(|r| r.status == GoalStatus::Succeeded && r.score >= best.score);
            if let Some(hit) = hit {
                best = hit.clone();
            } else if let Some(top) = results.first() {
                if top.score > best.score {
                    best = top.clone();
                }
            }
            if over {
                break;
            }
            results.truncate(self.beam_width);
            beam = results;
        }
        Ok(best)
    }
}
