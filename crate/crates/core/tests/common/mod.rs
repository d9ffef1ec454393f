#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use advtext::attack::Attack;
use advtext::goal::UntargetedClassification;
use advtext::model::{FeatureConfig, LinearTextClassifier, Victim};
use advtext::resources::{LexiconKind, SynonymLexicon};
use advtext::search::SearchMethod;
use advtext::transform::LexiconSwap;

/// A binary linear victim, a sentence and a per-word candidate table in
/// which candidates have no candidates of their own.
#[derive(Clone, Debug)]
pub struct ToyInstance {
    pub words: Vec<String>,
    pub options: Vec<Vec<String>>,
    pub weights: HashMap<String, [f64; 2]>,
    pub label: usize,
}

impl ToyInstance {
    pub fn random(seed: u64, max_words: usize, max_candidates: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=max_words);
        let pool: Vec<String> = (0..12).map(|i| format!("w{i}")).collect();
        let words: Vec<String> = (0..n).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let mut table: HashMap<String, Vec<String>> = HashMap::new();
        let mut weights = HashMap::new();
        for w in &words {
            if table.contains_key(w) {
                continue;
            }
            let k = rng.gen_range(1..=max_candidates);
            let cands: Vec<String> = (0..k).map(|j| format!("{w}x{j}")).collect();
            for c in &cands {
                weights.insert(c.clone(), [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]);
            }
            weights.insert(w.clone(), [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]);
            table.insert(w.clone(), cands);
        }
        let options = words.iter().map(|w| table[w].clone()).collect();
        let mut inst = ToyInstance {
            words,
            options,
            weights,
            label: 0,
        };
        inst.label = inst.predict(&inst.words.clone());
        inst
    }

    pub fn text(&self) -> String {
        self.words.join(" ")
    }

    /// Argmax of the summed logits, lower label on ties.
    pub fn predict(&self, words: &[String]) -> usize {
        let mut z = [0.0f64; 2];
        for w in words {
            let v = self.weights[w];
            z[0] += v[0];
            z[1] += v[1];
        }
        usize::from(z[1] > z[0])
    }

    pub fn space_size(&self) -> usize {
        self.options.iter().map(|o| o.len() + 1).product()
    }

    /// Whether any assignment of original-or-candidate per position flips
    /// the prediction.
    pub fn oracle_success(&self) -> bool {
        let mut choice = vec![0usize; self.words.len()];
        loop {
            let words: Vec<String> = choice
                .iter()
                .enumerate()
                .map(|(i, &c)| if c == 0 { self.words[i].clone() } else { self.options[i][c - 1].clone() })
                .collect();
            if self.predict(&words) != self.label {
                return true;
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return false;
                }
                choice[i] += 1;
                if choice[i] <= self.options[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// Whether `text` is reachable from the instance by per-position swaps.
    pub fn reachable(&self, text: &str) -> bool {
        let words: Vec<&str> = text.split(' ').collect();
        words.len() == self.words.len()
            && words
                .iter()
                .enumerate()
                .all(|(i, w)| *w == self.words[i] || self.options[i].iter().any(|o| o == w))
    }

    pub fn model(&self) -> LinearTextClassifier {
        let mut vocab: Vec<&String> = self.weights.keys().collect();
        vocab.sort();
        let mut m = LinearTextClassifier::new(vec!["0".into(), "1".into()], vocab, FeatureConfig::bag_of_words());
        for (w, v) in &self.weights {
            m.set_word_weight(w, 0, v[0]).unwrap();
            m.set_word_weight(w, 1, v[1]).unwrap();
        }
        m
    }

    pub fn lexicon(&self) -> SynonymLexicon {
        let mut entries: Vec<(String, Vec<(String, Option<advtext::text::PosTag>)>)> = Vec::new();
        for (w, opts) in self.words.iter().zip(&self.options) {
            if entries.iter().any(|(h, _)| h == w) {
                continue;
            }
            entries.push((w.clone(), opts.iter().map(|o| (o.clone(), None)).collect()));
        }
        SynonymLexicon::from_entries(LexiconKind::Thesaurus, entries)
    }

    /// Untargeted attack with no constraints.
    pub fn attack(&self, search: Arc<dyn SearchMethod>) -> Attack {
        Attack::new(
            Arc::new(UntargetedClassification),
            Vec::new(),
            Arc::new(LexiconSwap::wordnet(Arc::new(self.lexicon()))),
            search,
            Victim::classifier(self.model()),
        )
        .unwrap()
    }
}

/// Independent Wagner-Fischer edit distance over full matrices.
pub fn dp_levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=b.len() {
        d[0][j] = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            d[i][j] = (d[i - 1][j] + 1).min(d[i][j - 1] + 1).min(d[i - 1][j - 1] + cost);
        }
    }
    d[a.len()][b.len()]
}

/// BLEU and chrF reference values produced by an independent
/// implementation of the same definitions (`scripts/metric_fixtures.py`).
/// Columns: hypothesis, reference, BLEU, chrF.
pub const METRIC_FIXTURES: &[(&str, &str, f64, f64)] = &[
    ("the cat sat on the mat", "the cat sat on the mat", 1.0, 1.0),
    ("the cat sat on the mat", "the cat is on the mat", 0.4204482076268573, 0.6457794206252871),
    ("a quick brown fox jumps", "the quick brown fox jumped over", 0.34983301252722515, 0.654114258946123),
    ("le chat", "le chien", 0.7071067811865476, 0.29763585038814394),
    ("one two three four five six", "six five four three two one", 0.3021375397356768, 0.4806739069896965),
    ("there is a cat on the mat", "the cat is on the mat", 0.3123939936920256, 0.5375041454957898),
    ("hello", "hello world", 0.36787944117144233, 0.33908988729912815),
    ("completely different words", "nothing in common here", 0.0, 0.1369414378921687),
    ("the movie was spotless", "the movie was perfect", 0.5946035575013605, 0.5730277523698142),
    ("abcdefghij", "abcdefghiz", 0.0, 0.8590608465608466),
];
