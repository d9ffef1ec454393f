use std::collections::HashMap;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrics::cosine_similarity;

/// Neighbour lists precomputed at load time. Larger queries fall back to an
/// exact scan.
pub const DEFAULT_NEIGHBORS: usize = 50;

/// Word vectors with an exact cosine nearest-neighbour index.
#[derive(Clone, Debug)]
pub struct EmbeddingStore {
    name: String,
    dim: usize,
    words: Vec<String>,
    index: HashMap<String, usize>,
    vectors: Vec<Vec<f64>>,
    neighbors: Vec<Vec<(usize, f64)>>,
}

impl EmbeddingStore {
    pub fn from_vectors<S: Into<String>>(name: &str, entries: Vec<(S, Vec<f64>)>) -> Result<Self> {
        let mut words = Vec::with_capacity(entries.len());
        let mut vectors = Vec::with_capacity(entries.len());
        let dim = entries.first().map_or(0, |(_, v)| v.len());
        for (n, (w, v)) in entries.into_iter().enumerate() {
            if v.len() != dim {
                return Err(Error::parse(
                    name,
                    n + 1,
                    format!("expected {dim} components, found {}", v.len()),
                ));
            }
            words.push(w.into());
            vectors.push(v);
        }
        Ok(Self::build(name.to_string(), dim, words, vectors, DEFAULT_NEIGHBORS))
    }

    /// Parses `word v1 v2 ... vd` lines.
    pub fn parse(source: &str, name: &str, origin: &Path) -> Result<Self> {
        let mut words = Vec::new();
        let mut vectors = Vec::new();
        let mut dim = None;
        for (n, line) in source.lines().enumerate() {
            let mut parts = line.split_whitespace();
            let Some(word) = parts.next() else { continue };
            let v = parts
                .map(|p| p.parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Error::parse(origin, n + 1, e.to_string()))?;
            if v.is_empty() {
                return Err(Error::parse(origin, n + 1, "word has no vector"));
            }
            match dim {
                None => dim = Some(v.len()),
                Some(d) if d != v.len() => {
                    return Err(Error::parse(
                        origin,
                        n + 1,
                        format!("expected {d} components, found {}", v.len()),
                    ))
                }
                _ => {}
            }
            words.push(word.to_string());
            vectors.push(v);
        }
        Ok(Self::build(name.to_string(), dim.unwrap_or(0), words, vectors, DEFAULT_NEIGHBORS))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("embedding");
        Self::parse(&std::fs::read_to_string(path)?, name, path)
    }

    fn build(name: String, dim: usize, words: Vec<String>, vectors: Vec<Vec<f64>>, k: usize) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut store = EmbeddingStore {
            name,
            dim,
            words,
            index,
            vectors,
            neighbors: Vec::new(),
        };
        store.neighbors = (0..store.words.len())
            .into_par_iter()
            .map(|i| store.scan(i, k))
            .collect();
        store
    }

    fn scan(&self, query: usize, k: usize) -> Vec<(usize, f64)> {
        let q = &self.vectors[query];
        let mut scored: Vec<(usize, f64)> = self
            .vectors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != query)
            .map(|(j, v)| (j, cosine_similarity(q, v)))
            .collect();
        scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        scored.truncate(k);
        scored
    }

    /// Name reported in attack prototypes.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    fn lookup(&self, word: &str) -> Option<usize> {
        self.index
            .get(word)
            .or_else(|| self.index.get(&word.to_lowercase()))
            .copied()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.lookup(word).is_some()
    }

    pub fn vector(&self, word: &str) -> Option<&[f64]> {
        self.lookup(word).map(|i| self.vectors[i].as_slice())
    }

    /// Up to `k` nearest words by cosine similarity, most similar first. The
    /// query word itself is never returned; unknown words yield nothing.
    pub fn nearest_neighbors(&self, word: &str, k: usize) -> Vec<(String, f64)> {
        let Some(i) = self.lookup(word) else {
            return Vec::new();
        };
        let hits = if k <= self.neighbors[i].len() || self.neighbors[i].len() + 1 == self.len() {
            self.neighbors[i].iter().take(k).copied().collect()
        } else {
            self.scan(i, k)
        };
        hits.into_iter().map(|(j, c)| (self.words[j].clone(), c)).collect()
    }

    pub fn cosine(&self, a: &str, b: &str) -> Option<f64> {
        Some(cosine_similarity(self.vector(a)?, self.vector(b)?))
    }

    /// Mean squared difference between two word vectors.
    pub fn mse(&self, a: &str, b: &str) -> Option<f64> {
        let (u, v) = (self.vector(a)?, self.vector(b)?);
        if u.is_empty() {
            return Some(0.0);
        }
        Some(u.iter().zip(v).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() / u.len() as f64)
    }
}
