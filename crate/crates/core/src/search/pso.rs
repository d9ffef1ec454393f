use std::collections::BTreeSet;

use rand::Rng;

use super::{best_of, weighted_index, SearchMethod};
use crate::attack::SearchContext;
use crate::component::Component;
use crate::error::Result;
use crate::goal::{GoalFunctionResult, GoalStatus};
use crate::text::AttackedText;

const OMEGA: (f64, f64) = (0.8, 0.2);
const C1: (f64, f64) = (0.8, 0.2);
const C2: (f64, f64) = (0.2, 0.8);

/// Discrete particle swarm over word substitutions.
///
/// A particle's position is a text; its velocity holds, per word index, the
/// probability of copying that word from a better position. Each iteration
/// moves particles towards their personal best (with probability `c1`) and
/// the global best (with probability `c2`), then mutates particles that are
/// still close to the original. Inertia and `c1` fall linearly while `c2`
/// rises, shifting the swarm from exploration to convergence.
#[derive(Clone, Debug, PartialEq)]
pub struct ParticleSwarmOptimization {
    pub pop_size: usize,
    pub max_iters: usize,
    pub initial_velocity: f64,
    pub mutation_rate: f64,
    /// Attempts at a constraint-passing move before a particle stays put.
    pub max_turn_retries: usize,
}

impl Default for ParticleSwarmOptimization {
    fn default() -> Self {
        ParticleSwarmOptimization {
            pop_size: 60,
            max_iters: 20,
            initial_velocity: 0.5,
            mutation_rate: 1.0,
            max_turn_retries: 20,
        }
    }
}

fn schedule((start, end): (f64, f64), iter: usize, max_iters: usize) -> f64 {
    if max_iters == 0 {
        return start;
    }
    start + (end - start) * iter as f64 / max_iters as f64
}

struct Neighbours {
    results: Vec<GoalFunctionResult>,
    probs: Vec<f64>,
    over: bool,
}

impl ParticleSwarmOptimization {
    /// The best single substitution at each allowed index of `from`, with
    /// selection weights proportional to the positive score gains (uniform
    /// when there are none).
    fn neighbours(ctx: &mut SearchContext<'_>, from: &GoalFunctionResult) -> Result<Neighbours> {
        let mut results = Vec::new();
        let mut gains = Vec::new();
        let mut over = false;
        for i in ctx.allowed_indices(&from.text) {
            let cands = ctx.candidates(&from.text, Some(&BTreeSet::from([i])))?;
            if cands.is_empty() {
                continue;
            }
            let (scored, o) = ctx.evaluate(&cands)?;
            if let Some(best) = best_of(&scored) {
                gains.push((best.score - from.score).max(0.0));
                results.push(best.clone());
            }
            if o {
                over = true;
                break;
            }
        }
        let total: f64 = gains.iter().sum();
        let probs = if total > 0.0 {
            gains.iter().map(|g| g / total).collect()
        } else {
            vec![1.0; gains.len()]
        };
        Ok(Neighbours { results, probs, over })
    }

    /// Copies words from `target` into `text` where they differ, each with
    /// probability `velocity[i]`. One random draw is made per index.
    fn turn(text: &AttackedText, target: &AttackedText, velocity: &[f64], rng: &mut impl Rng) -> Result<AttackedText> {
        let mut edits: Vec<(usize, &str)> = Vec::new();
        for (i, v) in velocity.iter().enumerate().take(text.num_words().min(target.num_words())) {
            let draw = rng.gen::<f64>();
            if draw < *v && text.words()[i] != target.words()[i] {
                edits.push((i, target.words()[i].as_str()));
            }
        }
        if edits.is_empty() {
            Ok(text.clone())
        } else {
            text.replace_words_at(&edits)
        }
    }

    fn differs(a: &AttackedText, b: &AttackedText, i: usize) -> f64 {
        if a.word(i) == b.word(i) {
            0.0
        } else {
            1.0
        }
    }
}

impl SearchMethod for ParticleSwarmOptimization {
    fn describe(&self) -> Component {
        let d = Self::default();
        let mut c = Component::new("ParticleSwarmOptimization");
        if self.pop_size != d.pop_size {
            c = c.with("pop_size", self.pop_size);
        }
        if self.max_iters != d.max_iters {
            c = c.with("max_iters", self.max_iters);
        }
        if self.initial_velocity != d.initial_velocity {
            c = c.with("initial_velocity", self.initial_velocity);
        }
        if self.mutation_rate != d.mutation_rate {
            c = c.with("mutation_rate", self.mutation_rate);
        }
        c
    }

    fn search(&self, ctx: &mut SearchContext<'_>, initial: GoalFunctionResult) -> Result<GoalFunctionResult> {
        let n = initial.text.num_words();
        if self.pop_size == 0 || n == 0 {
            return Ok(initial);
        }
        let start = Self::neighbours(ctx, &initial)?;
        if start.results.is_empty() {
            return Ok(initial);
        }
        if start.over {
            return Ok(best_of(&start.results).filter(|b| b.score > initial.score).cloned().unwrap_or(initial));
        }
        let mut particles: Vec<GoalFunctionResult> = (0..self.pop_size)
            .map(|_| {
                let k = weighted_index(&start.probs, ctx.rng()).unwrap_or(0);
                start.results[k].clone()
            })
            .collect();
        let mut velocities = vec![vec![self.initial_velocity; n]; self.pop_size];
        let mut pbest = particles.clone();
        let mut gbest = best_of(&particles).expect("non-empty swarm").clone();
        if gbest.score < initial.score {
            gbest = initial.clone();
        }
        for iter in 0..self.max_iters {
            if gbest.status == GoalStatus::Succeeded {
                break;
            }
            let omega = schedule(OMEGA, iter, self.max_iters);
            let c1 = schedule(C1, iter, self.max_iters);
            let c2 = schedule(C2, iter, self.max_iters);
            let mut moved: Vec<(usize, AttackedText)> = Vec::new();
            for k in 0..self.pop_size {
                let x = &particles[k].text;
                for (i, v) in velocities[k].iter_mut().enumerate() {
                    let pull = (Self::differs(&pbest[k].text, x, i) + Self::differs(&gbest.text, x, i)) / 2.0;
                    *v = omega * *v + (1.0 - omega) * pull;
                }
                for _ in 0..self.max_turn_retries.max(1) {
                    let mut t = x.clone();
                    if ctx.rng().gen::<f64>() < c1 {
                        t = Self::turn(&t, &pbest[k].text, &velocities[k], ctx.rng())?;
                    }
                    if ctx.rng().gen::<f64>() < c2 {
                        t = Self::turn(&t, &gbest.text, &velocities[k], ctx.rng())?;
                    }
                    if t.words() == x.words() {
                        break;
                    }
                    if ctx.passes_constraints(x, &t) {
                        moved.push((k, t));
                        break;
                    }
                }
            }
            let texts: Vec<AttackedText> = moved.iter().map(|(_, t)| t.clone()).collect();
            let (results, over) = ctx.evaluate(&texts)?;
            for ((k, _), r) in moved.iter().zip(results) {
                particles[*k] = r;
            }
            if !over {
                for k in 0..self.pop_size {
                    let changed = AttackedText::words_changed(&initial.text, &particles[k].text) as f64 / n as f64;
                    let p = self.mutation_rate * (1.0 - 2.0 * changed).max(0.0);
                    if ctx.rng().gen::<f64>() < p {
                        let nb = Self::neighbours(ctx, &particles[k])?;
                        if let Some(j) = weighted_index(&nb.probs, ctx.rng()) {
                            particles[k] = nb.results[j].clone();
                        }
                        if nb.over {
                            break;
                        }
                    }
                }
            }
            for k in 0..self.pop_size {
                if particles[k].score > pbest[k].score {
                    pbest[k] = particles[k].clone();
                }
                if particles[k].score > gbest.score {
                    gbest = particles[k].clone();
                }
            }
            if over || ctx.budget_exhausted() {
                break;
            }
        }
        Ok(gbest)
    }

    fn requires_substitution(&self) -> bool {
        true
    }
}
