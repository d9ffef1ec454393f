//! Text similarity metrics: Levenshtein distance, sentence BLEU and chrF.

use std::collections::HashMap;
use std::hash::Hash;

use crate::text::segment;

/// Character-level edit distance (unit-cost insert, delete, substitute).
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if ca == cb {
                diag
            } else {
                1 + diag.min(up).min(row[j])
            };
            diag = up;
        }
    }
    row[b.len()]
}

pub fn cosine_similarity(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        (dot / (na * nb)).clamp(-1.0, 1.0)
    }
}

fn ngram_counts<T: Hash + Eq + Clone>(items: &[T], n: usize) -> HashMap<&[T], usize> {
    let mut counts = HashMap::new();
    if items.len() >= n {
        for w in items.windows(n) {
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    counts
}

fn clipped_matches<T: Hash + Eq>(hyp: &HashMap<&[T], usize>, reference: &HashMap<&[T], usize>) -> usize {
    hyp.iter()
        .map(|(g, &c)| c.min(reference.get(g).copied().unwrap_or(0)))
        .sum()
}

/// Lowercased words as the metrics see them.
pub fn metric_tokens(text: &str) -> Vec<String> {
    segment(text).0.into_iter().map(|w| w.to_lowercase()).collect()
}

/// Sentence BLEU-4 with uniform weights and the standard brevity penalty.
///
/// Zero unigram overlap (or an empty hypothesis) scores 0. Higher orders
/// with no matches are smoothed to `1 / (total + 1)`, so identical non-empty
/// texts always score exactly 1.
pub fn sentence_bleu(hypothesis: &[String], reference: &[String]) -> f64 {
    if hypothesis.is_empty() || reference.is_empty() {
        return 0.0;
    }
    let mut log_sum = 0.0;
    for n in 1..=4 {
        let hyp = ngram_counts(hypothesis, n);
        let refs = ngram_counts(reference, n);
        let total = hypothesis.len().saturating_sub(n - 1);
        let matches = clipped_matches(&hyp, &refs);
        let p = if matches > 0 {
            matches as f64 / total as f64
        } else if n == 1 {
            return 0.0;
        } else {
            1.0 / (total as f64 + 1.0)
        };
        log_sum += 0.25 * p.ln();
    }
    let (h, r) = (hypothesis.len() as f64, reference.len() as f64);
    let bp = if h > r { 1.0 } else { (1.0 - r / h).exp() };
    bp * log_sum.exp()
}

/// [`sentence_bleu`] over segmented, lowercased text.
pub fn bleu(hypothesis: &str, reference: &str) -> f64 {
    sentence_bleu(&metric_tokens(hypothesis), &metric_tokens(reference))
}

pub const CHRF_ORDER: usize = 6;
pub const CHRF_BETA: f64 = 2.0;

/// Character n-gram F-score (n = 1..=6, β = 2), whitespace removed.
///
/// Precision and recall are averaged over the orders where either side has
/// at least one n-gram. Two texts with no characters at all score 1.
pub fn chrf(hypothesis: &str, reference: &str) -> f64 {
    let hyp: Vec<char> = hypothesis.chars().filter(|c| !c.is_whitespace()).collect();
    let refs: Vec<char> = reference.chars().filter(|c| !c.is_whitespace()).collect();
    let (mut p_sum, mut r_sum, mut orders) = (0.0, 0.0, 0usize);
    for n in 1..=CHRF_ORDER {
        let h = ngram_counts(&hyp, n);
        let r = ngram_counts(&refs, n);
        let h_total: usize = h.values().sum();
        let r_total: usize = r.values().sum();
        if h_total == 0 && r_total == 0 {
            continue;
        }
        let m = clipped_matches(&h, &r) as f64;
        p_sum += if h_total > 0 { m / h_total as f64 } else { 0.0 };
        r_sum += if r_total > 0 { m / r_total as f64 } else { 0.0 };
        orders += 1;
    }
    if orders == 0 {
        return 1.0;
    }
    let (p, r) = (p_sum / orders as f64, r_sum / orders as f64);
    let b2 = CHRF_BETA * CHRF_BETA;
    if p + r == 0.0 {
        0.0
    } else {
        (1.0 + b2) * p * r / (b2 * p + r)
    }
}
