use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::RwLock;

use serde::Serialize;

use crate::error::Result;
use crate::model::ModelOutput;
use crate::text::AttackedText;

type ConstraintKey = (usize, AttackedText, AttackedText);

/// Memoised victim outputs and constraint verdicts for one attack run.
///
/// Victim outputs are keyed by the printable text sent to the model;
/// constraint verdicts by constraint position, reference and candidate.
/// Counters are kept even while caching is disabled.
#[derive(Debug)]
pub struct ResultCache {
    enabled: bool,
    outputs: RwLock<HashMap<String, ModelOutput>>,
    verdicts: RwLock<HashMap<ConstraintKey, bool>>,
    output_hits: AtomicUsize,
    output_misses: AtomicUsize,
    verdict_hits: AtomicUsize,
    verdict_misses: AtomicUsize,
    victim_calls: AtomicUsize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub output_hits: usize,
    pub output_misses: usize,
    pub constraint_hits: usize,
    pub constraint_misses: usize,
    /// Inputs actually sent to the victim.
    pub victim_calls: usize,
}

impl CacheStats {
    pub fn output_hit_rate(&self) -> f64 {
        let total = self.output_hits + self.output_misses;
        if total == 0 {
            0.0
        } else {
            self.output_hits as f64 / total as f64
        }
    }
}

impl ResultCache {
    pub fn new(enabled: bool) -> Self {
        ResultCache {
            enabled,
            outputs: RwLock::default(),
            verdicts: RwLock::default(),
            output_hits: AtomicUsize::new(0),
            output_misses: AtomicUsize::new(0),
            verdict_hits: AtomicUsize::new(0),
            verdict_misses: AtomicUsize::new(0),
            victim_calls: AtomicUsize::new(0),
        }
    }

    pub fn enabled(&self) -> bool {
        self.enabled
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            output_hits: self.output_hits.load(Ordering::Relaxed),
            output_misses: self.output_misses.load(Ordering::Relaxed),
            constraint_hits: self.verdict_hits.load(Ordering::Relaxed),
            constraint_misses: self.verdict_misses.load(Ordering::Relaxed),
            victim_calls: self.victim_calls.load(Ordering::Relaxed),
        }
    }

    pub fn clear(&self) {
        self.outputs.write().expect("cache lock").clear();
        self.verdicts.write().expect("cache lock").clear();
    }

    /// Looks every text up, calling `query` once with the distinct misses.
    pub(crate) fn outputs<F>(&self, texts: &[String], query: F) -> Result<Vec<ModelOutput>>
    where
        F: FnOnce(&[String]) -> Result<Vec<ModelOutput>>,
    {
        if !self.enabled {
            self.output_misses.fetch_add(texts.len(), Ordering::Relaxed);
            self.victim_calls.fetch_add(texts.len(), Ordering::Relaxed);
            return query(texts);
        }
        let mut found: Vec<Option<ModelOutput>> = {
            let map = self.outputs.read().expect("cache lock");
            texts.iter().map(|t| map.get(t).cloned()).collect()
        };
        let mut missing: Vec<String> = Vec::new();
        for (t, f) in texts.iter().zip(&found) {
            if f.is_none() && !missing.contains(t) {
                missing.push(t.clone());
            }
        }
        let hits = found.iter().filter(|f| f.is_some()).count();
        self.output_hits.fetch_add(hits, Ordering::Relaxed);
        self.output_misses.fetch_add(texts.len() - hits, Ordering::Relaxed);
        if !missing.is_empty() {
            self.victim_calls.fetch_add(missing.len(), Ordering::Relaxed);
            let fresh = query(&missing)?;
            let mut map = self.outputs.write().expect("cache lock");
            for (t, o) in missing.iter().zip(fresh) {
                map.insert(t.clone(), o);
            }
            for (t, f) in texts.iter().zip(found.iter_mut()) {
                if f.is_none() {
                    *f = map.get(t).cloned();
                }
            }
        }
        Ok(found.into_iter().map(|f| f.expect("filled above")).collect())
    }

    pub(crate) fn verdict<F>(&self, constraint: usize, reference: &AttackedText, candidate: &AttackedText, check: F) -> bool
    where
        F: FnOnce() -> bool,
    {
        if !self.enabled {
            self.verdict_misses.fetch_add(1, Ordering::Relaxed);
            return check();
        }
        let key = (constraint, reference.clone(), candidate.clone());
        if let Some(&v) = self.verdicts.read().expect("cache lock").get(&key) {
            self.verdict_hits.fetch_add(1, Ordering::Relaxed);
            return v;
        }
        self.verdict_misses.fetch_add(1, Ordering::Relaxed);
        let v = check();
        self.verdicts.write().expect("cache lock").insert(key, v);
        v
    }
}
