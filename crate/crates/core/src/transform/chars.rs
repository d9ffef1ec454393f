use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{swap_each, TransformContext, Transformation};
use crate::component::Component;
use crate::error::Result;
use crate::resources::CharMaps;
use crate::text::AttackedText;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharEdit {
    Insert,
    Delete,
    NeighborSwap,
    Substitute,
    Homoglyph,
    Qwerty,
}

impl CharEdit {
    pub const ALL: [CharEdit; 6] = [
        CharEdit::Insert,
        CharEdit::Delete,
        CharEdit::NeighborSwap,
        CharEdit::Substitute,
        CharEdit::Homoglyph,
        CharEdit::Qwerty,
    ];

    pub fn class_name(self) -> &'static str {
        match self {
            CharEdit::Insert => "WordSwapRandomCharacterInsertion",
            CharEdit::Delete => "WordSwapRandomCharacterDeletion",
            CharEdit::NeighborSwap => "WordSwapNeighboringCharacterSwap",
            CharEdit::Substitute => "WordSwapRandomCharacterSubstitution",
            CharEdit::Homoglyph => "WordSwapHomoglyphSwap",
            CharEdit::Qwerty => "WordSwapQWERTY",
        }
    }

    /// Whether the edit touches one random position by default.
    pub fn default_random_one(self) -> bool {
        !matches!(self, CharEdit::Homoglyph | CharEdit::Qwerty)
    }
}

/// Character-level typo, one kind of edit per instance.
///
/// In words of three or more characters the first and last characters are
/// never changed, deleted, moved or separated by an insertion.
#[derive(Clone, Debug)]
pub struct CharacterSwap {
    pub edit: CharEdit,
    pub random_one: bool,
    pub maps: Arc<CharMaps>,
}

impl CharacterSwap {
    pub fn new(edit: CharEdit, random_one: bool, maps: Arc<CharMaps>) -> Self {
        CharacterSwap { edit, random_one, maps }
    }

    pub fn with_default(edit: CharEdit, maps: Arc<CharMaps>) -> Self {
        Self::new(edit, edit.default_random_one(), maps)
    }

    fn homoglyph(&self, c: char) -> Option<char> {
        self.maps.homoglyph(c).or_else(|| {
            let lower = c.to_lowercase().next()?;
            self.maps.homoglyph(lower)
        })
    }

    fn neighbors(&self, c: char) -> Vec<char> {
        let lower = c.to_lowercase().next().unwrap_or(c);
        let upper = c.is_uppercase();
        self.maps
            .keyboard_neighbors(lower)
            .iter()
            .map(|&n| if upper { n.to_uppercase().next().unwrap_or(n) } else { n })
            .collect()
    }

    /// Positions the edit may apply to.
    fn positions(&self, chars: &[char]) -> Vec<usize> {
        let n = chars.len();
        let inner = n >= 3;
        match self.edit {
            CharEdit::Insert => {
                if inner {
                    (1..n).collect()
                } else {
                    (0..=n).collect()
                }
            }
            CharEdit::NeighborSwap => {
                let range = if inner { 1..n - 2 } else { 0..n.saturating_sub(1) };
                range.filter(|&p| chars[p] != chars[p + 1]).collect()
            }
            _ => {
                let range = if inner { 1..n - 1 } else { 0..n };
                range
                    .filter(|&p| match self.edit {
                        CharEdit::Homoglyph => self.homoglyph(chars[p]).is_some(),
                        CharEdit::Qwerty => !self.maps.keyboard_neighbors(chars[p].to_lowercase().next().unwrap_or(chars[p])).is_empty(),
                        _ => true,
                    })
                    .collect()
            }
        }
    }

    /// All edits at position `p`, or one random edit when `one` is set.
    fn edits_at(&self, chars: &[char], p: usize, one: bool, rng: &mut ChaCha8Rng) -> Vec<String> {
        let with = |f: &dyn Fn(&mut Vec<char>)| {
            let mut c = chars.to_vec();
            f(&mut c);
            c.into_iter().collect::<String>()
        };
        match self.edit {
            CharEdit::Insert => {
                let letter = keep_case(random_letter(rng), chars.get(p).or(chars.last()).copied());
                vec![with(&|c| c.insert(p, letter))]
            }
            CharEdit::Delete => vec![with(&|c| {
                c.remove(p);
            })],
            CharEdit::NeighborSwap => vec![with(&|c| c.swap(p, p + 1))],
            CharEdit::Substitute => {
                let orig = chars[p].to_lowercase().next().unwrap_or(chars[p]);
                let choices: Vec<char> = ('a'..='z').filter(|&l| l != orig).collect();
                let letter = keep_case(*choices.choose(rng).expect("25 letters"), Some(chars[p]));
                vec![with(&|c| c[p] = letter)]
            }
            CharEdit::Homoglyph => {
                let h = self.homoglyph(chars[p]).expect("position filtered");
                vec![with(&|c| c[p] = h)]
            }
            CharEdit::Qwerty => {
                let near = self.neighbors(chars[p]);
                let picks: Vec<char> = if one {
                    near.choose(rng).copied().into_iter().collect()
                } else {
                    near
                };
                picks.into_iter().map(|k| with(&|c| c[p] = k)).collect()
            }
        }
    }

    pub fn word_candidates(&self, word: &str, rng: &mut ChaCha8Rng) -> Vec<String> {
        let chars: Vec<char> = word.chars().collect();
        let positions = self.positions(&chars);
        let mut out = Vec::new();
        if self.random_one {
            if let Some(&p) = positions.choose(rng) {
                out.extend(self.edits_at(&chars, p, true, rng));
            }
        } else {
            for p in positions {
                out.extend(self.edits_at(&chars, p, false, rng));
            }
        }
        out.retain(|w| !w.is_empty() && w != word);
        out
    }
}

fn random_letter(rng: &mut ChaCha8Rng) -> char {
    rng.gen_range(b'a'..=b'z') as char
}

fn keep_case(letter: char, like: Option<char>) -> char {
    match like {
        Some(c) if c.is_uppercase() => letter.to_ascii_uppercase(),
        _ => letter,
    }
}

impl Transformation for CharacterSwap {
    fn describe(&self) -> Component {
        let c = Component::new(self.edit.class_name());
        if self.edit.default_random_one() || self.random_one {
            c.with("random_one", self.random_one)
        } else {
            c
        }
    }

    fn generate(&self, text: &AttackedText, indices: &BTreeSet<usize>, ctx: &mut TransformContext<'_>) -> Result<Vec<AttackedText>> {
        swap_each(text, indices, |_, word| Ok(self.word_candidates(word, ctx.rng)))
    }
}
