//! Tokenization-preserving text.
//!
//! An [`AttackedText`] keeps the exact characters between words so that any
//! sequence of word-level edits can be turned back into printable text without
//! disturbing punctuation or whitespace. Every edit returns a new value.

mod pos;
mod segment;

pub use pos::{PosLexicon, PosTag};
pub use segment::{segment, split_sentences};

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Immutable word-segmented text with edit history.
///
/// Each word carries a stable id. Words present in the source text have ids
/// `0..original_word_count`, so the id doubles as the original word index;
/// inserted words get fresh ids above that range. The set of modified ids only
/// grows along a chain of edits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AttackedText {
    original: Arc<str>,
    words: Vec<String>,
    /// `words.len() + 1` runs of non-word characters.
    separators: Vec<String>,
    word_ids: Vec<usize>,
    word_columns: Vec<usize>,
    columns: Arc<[String]>,
    modified: BTreeSet<usize>,
    original_len: usize,
    next_id: usize,
}

/// One aligned position where two texts differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordChange<'a> {
    pub id: usize,
    pub reference: Option<(usize, &'a str)>,
    pub candidate: Option<(usize, &'a str)>,
}

/// Column separator used when joining multi-part inputs.
pub const COLUMN_SEPARATOR: &str = "\n";

impl AttackedText {
    pub fn new(text: &str) -> Self {
        let (words, separators) = segment(text);
        let n = words.len();
        AttackedText {
            original: Arc::from(text),
            words,
            separators,
            word_ids: (0..n).collect(),
            word_columns: vec![0; n],
            columns: Arc::from(Vec::new()),
            modified: BTreeSet::new(),
            original_len: n,
            next_id: n,
        }
    }

    /// Builds a multi-part input such as a premise/hypothesis pair. Parts are
    /// joined with a newline in the printable text.
    pub fn with_columns<L: AsRef<str>, T: AsRef<str>>(parts: &[(L, T)]) -> Self {
        let mut words = Vec::new();
        let mut separators: Vec<String> = Vec::new();
        let mut word_columns = Vec::new();
        let mut labels = Vec::new();
        let mut original = String::new();
        for (col, (label, text)) in parts.iter().enumerate() {
            let (w, s) = segment(text.as_ref());
            if col == 0 {
                separators.extend(s);
            } else {
                original.push_str(COLUMN_SEPARATOR);
                let tail = separators.pop().unwrap_or_default();
                let mut s = s.into_iter();
                let head = s.next().unwrap_or_default();
                separators.push(format!("{tail}{COLUMN_SEPARATOR}{head}"));
                separators.extend(s);
            }
            original.push_str(text.as_ref());
            word_columns.extend(std::iter::repeat(col).take(w.len()));
            words.extend(w);
            labels.push(label.as_ref().to_string());
        }
        if separators.is_empty() {
            separators.push(String::new());
        }
        let n = words.len();
        AttackedText {
            original: Arc::from(original),
            words,
            separators,
            word_ids: (0..n).collect(),
            word_columns,
            columns: Arc::from(labels),
            modified: BTreeSet::new(),
            original_len: n,
            next_id: n,
        }
    }

    pub fn original_text(&self) -> &str {
        &self.original
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn word(&self, index: usize) -> Option<&str> {
        self.words.get(index).map(String::as_str)
    }

    pub fn num_words(&self) -> usize {
        self.words.len()
    }

    pub fn separators(&self) -> &[String] {
        &self.separators
    }

    /// Number of words in the source text this one was derived from.
    pub fn original_num_words(&self) -> usize {
        self.original_len
    }

    pub fn printable(&self) -> String {
        let mut out = String::with_capacity(self.original.len() + 8);
        out.push_str(&self.separators[0]);
        for (w, s) in self.words.iter().zip(&self.separators[1..]) {
            out.push_str(w);
            out.push_str(s);
        }
        out
    }

    pub fn word_id(&self, index: usize) -> Option<usize> {
        self.word_ids.get(index).copied()
    }

    /// Position of this word in the source text, `None` for inserted words.
    pub fn original_index(&self, index: usize) -> Option<usize> {
        self.word_id(index).filter(|&id| id < self.original_len)
    }

    pub fn index_of_id(&self, id: usize) -> Option<usize> {
        self.word_ids.iter().position(|&w| w == id)
    }

    /// Ids of every word touched so far, including deleted ones.
    pub fn modified_ids(&self) -> &BTreeSet<usize> {
        &self.modified
    }

    /// Current positions of modified words still present in the text.
    pub fn modified_indices(&self) -> BTreeSet<usize> {
        self.word_ids
            .iter()
            .enumerate()
            .filter(|(_, id)| self.modified.contains(id))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn column_labels(&self) -> &[String] {
        &self.columns
    }

    pub fn column_of(&self, index: usize) -> Option<&str> {
        let col = *self.word_columns.get(index)?;
        self.columns.get(col).map(String::as_str)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.words.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.words.len(),
            })
        }
    }

    /// Replaces word `index`, carrying over the casing of the word it replaces.
    pub fn replace_word_at(&self, index: usize, word: &str) -> Result<Self> {
        self.check_index(index)?;
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut next = self.clone();
        next.words[index] = match_casing(&self.words[index], word);
        next.modified.insert(self.word_ids[index]);
        Ok(next)
    }

    pub fn replace_words_at(&self, edits: &[(usize, &str)]) -> Result<Self> {
        let mut next = self.clone();
        for &(index, word) in edits {
            next = next.replace_word_at(index, word)?;
        }
        Ok(next)
    }

    /// Removes word `index`. The separator on its left survives and the one on
    /// its right is dropped, except for the final word where the trailing
    /// separator is kept so closing punctuation is not lost.
    pub fn delete_word_at(&self, index: usize) -> Result<Self> {
        self.check_index(index)?;
        let mut next = self.clone();
        let last = index + 1 == self.words.len();
        next.words.remove(index);
        if last {
            next.separators.remove(index);
        } else {
            next.separators.remove(index + 1);
        }
        next.modified.insert(next.word_ids.remove(index));
        next.word_columns.remove(index);
        Ok(next)
    }

    /// Inserts `word` right after word `index`, separated by a single space.
    pub fn insert_word_after(&self, index: usize, word: &str) -> Result<Self> {
        self.check_index(index)?;
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut next = self.clone();
        let id = next.next_id;
        next.next_id += 1;
        next.words.insert(index + 1, word.to_string());
        next.separators.insert(index + 1, " ".to_string());
        next.word_ids.insert(index + 1, id);
        next.word_columns.insert(index + 1, self.word_columns[index]);
        next.modified.insert(id);
        Ok(next)
    }

    /// Words that differ between `reference` and `candidate`, aligned by word
    /// id so insertions and deletions do not shift the comparison.
    pub fn diff<'a>(reference: &'a AttackedText, candidate: &'a AttackedText) -> Vec<WordChange<'a>> {
        let ref_pos: HashMap<usize, usize> =
            reference.word_ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let cand_pos: HashMap<usize, usize> =
            candidate.word_ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let ids: BTreeSet<usize> = ref_pos.keys().chain(cand_pos.keys()).copied().collect();
        ids.into_iter()
            .filter_map(|id| {
                let r = ref_pos.get(&id).map(|&i| (i, reference.words[i].as_str()));
                let c = cand_pos.get(&id).map(|&i| (i, candidate.words[i].as_str()));
                match (r, c) {
                    (Some((_, a)), Some((_, b))) if a == b => None,
                    _ => Some(WordChange {
                        id,
                        reference: r,
                        candidate: c,
                    }),
                }
            })
            .collect()
    }

    pub fn words_changed(reference: &AttackedText, candidate: &AttackedText) -> usize {
        Self::diff(reference, candidate).len()
    }

    /// Sentences of the printable text.
    pub fn sentences(&self) -> Vec<String> {
        split_sentences(&self.printable())
    }
}

impl fmt::Display for AttackedText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.printable())
    }
}

fn is_all_caps(word: &str) -> bool {
    let letters: Vec<char> = word.chars().filter(|c| c.is_alphabetic()).collect();
    letters.len() >= 2 && letters.iter().all(|c| c.is_uppercase())
}

fn is_title_case(word: &str) -> bool {
    word.chars().next().is_some_and(char::is_uppercase) && !is_all_caps(word)
}

/// Casing rule for replacements: all-caps stays all-caps, title case stays
/// title case, anything else is inserted verbatim.
pub fn match_casing(original: &str, replacement: &str) -> String {
    if is_all_caps(original) {
        replacement.to_uppercase()
    } else if is_title_case(original) {
        let mut chars = replacement.chars();
        match chars.next() {
            Some(first) => first.to_uppercase().chain(chars).collect(),
            None => String::new(),
        }
    } else {
        replacement.to_string()
    }
}
