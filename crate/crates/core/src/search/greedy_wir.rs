use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;

use super::{best_of, SearchMethod};
use crate::attack::SearchContext;
use crate::component::Component;
use crate::error::{Error, Result};
use crate::goal::{GoalFunctionResult, GoalStatus};
use crate::model::{softmax, UNK_TOKEN};
use crate::text::AttackedText;

/// How word importance is measured before the greedy pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WirMethod {
    /// Goal score with the word replaced by the unknown-word token.
    Unk,
    /// Goal score with the word deleted.
    Delete,
    /// Softmax of the deletion scores times the best single-swap gain.
    Pwws,
    /// Gradient saliency of the word; needs a white-box victim.
    Gradient,
    /// A random order.
    Random,
}

impl WirMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            WirMethod::Unk => "unk",
            WirMethod::Delete => "delete",
            WirMethod::Pwws => "pwws",
            WirMethod::Gradient => "gradient",
            WirMethod::Random => "random",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "unk" => Some(WirMethod::Unk),
            "delete" | "del" => Some(WirMethod::Delete),
            "pwws" => Some(WirMethod::Pwws),
            "gradient" => Some(WirMethod::Gradient),
            "random" => Some(WirMethod::Random),
            _ => None,
        }
    }
}

impl fmt::Display for WirMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ranks words by importance, then swaps them one at a time in that order,
/// keeping a swap only when it strictly raises the goal score.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyWordSwapWir {
    pub wir_method: WirMethod,
}

impl GreedyWordSwapWir {
    pub fn new(wir_method: WirMethod) -> Self {
        GreedyWordSwapWir { wir_method }
    }

    /// Scores of `texts`, or `None` when the budget ran out on the way.
    fn probe(ctx: &mut SearchContext<'_>, texts: Vec<AttackedText>) -> Result<Option<Vec<f64>>> {
        let n = texts.len();
        let (results, over) = ctx.evaluate(&texts)?;
        if over && results.len() < n {
            return Ok(None);
        }
        Ok(Some(results.iter().map(|r| r.score).collect()))
    }

    /// Allowed indices in visiting order, or `None` if the budget ran out
    /// while ranking.
    pub fn rank(
        &self,
        ctx: &mut SearchContext<'_>,
        initial: &GoalFunctionResult,
        indices: &[usize],
    ) -> Result<Option<Vec<usize>>> {
        let text = &initial.text;
        let importance: Vec<f64> = match self.wir_method {
            WirMethod::Random => {
                let mut order = indices.to_vec();
                order.shuffle(ctx.rng());
                return Ok(Some(order));
            }
            WirMethod::Unk => {
                let probes = indices
                    .iter()
                    .map(|&i| text.replace_word_at(i, UNK_TOKEN))
                    .collect::<Result<Vec<_>>>()?;
                match Self::probe(ctx, probes)? {
                    Some(s) => s,
                    None => return Ok(None),
                }
            }
            WirMethod::Delete | WirMethod::Pwws => {
                let probes = indices
                    .iter()
                    .map(|&i| text.delete_word_at(i))
                    .collect::<Result<Vec<_>>>()?;
                let Some(scores) = Self::probe(ctx, probes)? else {
                    return Ok(None);
                };
                if self.wir_method == WirMethod::Delete {
                    scores
                } else {
                    let saliency = softmax(&scores);
                    let mut out = Vec::with_capacity(indices.len());
                    for (k, &i) in indices.iter().enumerate() {
                        let cands = ctx.candidates(text, Some(&BTreeSet::from([i])))?;
                        let gain = if cands.is_empty() {
                            0.0
                        } else {
                            let (results, over) = ctx.evaluate(&cands)?;
                            if over && results.len() < cands.len() {
                                return Ok(None);
                            }
                            best_of(&results).map_or(0.0, |b| b.score - initial.score)
                        };
                        out.push(saliency[k] * gain);
                    }
                    out
                }
            }
            WirMethod::Gradient => {
                let wb = ctx
                    .white_box()
                    .ok_or_else(|| Error::NotWhiteBox("victim".into()))?;
                let label = ctx
                    .label()
                    .ok_or_else(|| Error::config("gradient ranking needs a label"))?;
                let saliency = wb.word_saliency(text, label);
                indices.iter().map(|&i| saliency.get(i).copied().unwrap_or(0.0)).collect()
            }
        };
        let mut order: Vec<usize> = (0..indices.len()).collect();
        order.sort_by(|&a, &b| importance[b].total_cmp(&importance[a]));
        Ok(Some(order.into_iter().map(|k| indices[k]).collect()))
    }
}

impl SearchMethod for GreedyWordSwapWir {
    fn describe(&self) -> Component {
        Component::new("GreedyWordSwapWIR").with("wir_method", self.wir_method.as_str())
    }

    fn search(&self, ctx: &mut SearchContext<'_>, initial: GoalFunctionResult) -> Result<GoalFunctionResult> {
        let indices: Vec<usize> = ctx.allowed_indices(&initial.text).into_iter().collect();
        if ctx.budget_exhausted() {
            return Ok(initial);
        }
        let Some(order) = self.rank(ctx, &initial, &indices)? else {
            return Ok(initial);
        };
        let ids: Vec<usize> = order.iter().filter_map(|&i| initial.text.word_id(i)).collect();
        let mut current = initial;
        for id in ids {
            if current.status == GoalStatus::Succeeded || ctx.budget_exhausted() {
                break;
            }
            let Some(index) = current.text.index_of_id(id) else { continue };
            let candidates = ctx.candidates(&current.text, Some(&BTreeSet::from([index])))?;
            if candidates.is_empty() {
                continue;
            }
            let (results, _) = ctx.evaluate(&candidates)?;
            if let Some(best) = best_of(&results) {
                if best.score > current.score {
                    current = best.clone();
                }
            }
        }
        Ok(current)
    }

    fn is_black_box(&self) -> bool {
        self.wir_method != WirMethod::Gradient
    }
}
