use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

/// Visually similar substitutes. Every substitute is alphanumeric so a swapped
/// word still segments as one word.
const HOMOGLYPHS: &[(char, char)] = &[
    ('0', 'O'),
    ('1', 'l'),
    ('2', 'ᒿ'),
    ('3', 'Ʒ'),
    ('4', 'Ꮞ'),
    ('5', 'Ƽ'),
    ('6', 'б'),
    ('7', '𝟕'),
    ('8', 'Ȣ'),
    ('9', '৭'),
    ('a', 'ɑ'),
    ('b', 'Ь'),
    ('c', 'ϲ'),
    ('d', 'ԁ'),
    ('e', 'е'),
    ('f', '𝚏'),
    ('g', 'ɡ'),
    ('h', 'հ'),
    ('i', 'і'),
    ('j', 'ϳ'),
    ('k', '𝒌'),
    ('l', 'ⅼ'),
    ('m', 'ｍ'),
    ('n', 'ո'),
    ('o', 'о'),
    ('p', 'р'),
    ('q', 'ԛ'),
    ('r', 'ⲅ'),
    ('s', 'ѕ'),
    ('t', '𝚝'),
    ('u', 'ս'),
    ('v', 'ѵ'),
    ('w', 'ԝ'),
    ('x', 'х'),
    ('y', 'у'),
    ('z', 'ᴢ'),
];

const QWERTY_ROWS: [&str; 4] = ["1234567890", "qwertyuiop", "asdfghjkl", "zxcvbnm"];

/// Homoglyph and keyboard-adjacency tables used by character-level swaps.
#[derive(Clone, Debug)]
pub struct CharMaps {
    homoglyphs: BTreeMap<char, char>,
    keyboard: BTreeMap<char, Vec<char>>,
}

fn qwerty_neighbors() -> BTreeMap<char, Vec<char>> {
    let rows: Vec<Vec<char>> = QWERTY_ROWS.iter().map(|r| r.chars().collect()).collect();
    let mut map = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, &key) in row.iter().enumerate() {
            let mut near = Vec::new();
            for dr in [-1i32, 0, 1] {
                let rr = r as i32 + dr;
                if rr < 0 || rr as usize >= rows.len() {
                    continue;
                }
                let other = &rows[rr as usize];
                for dc in [-1i32, 0, 1] {
                    let cc = c as i32 + dc;
                    if (dr, dc) == (0, 0) || cc < 0 || cc as usize >= other.len() {
                        continue;
                    }
                    near.push(other[cc as usize]);
                }
            }
            map.insert(key, near);
        }
    }
    map
}

impl Default for CharMaps {
    fn default() -> Self {
        CharMaps {
            homoglyphs: HOMOGLYPHS.iter().copied().collect(),
            keyboard: qwerty_neighbors(),
        }
    }
}

impl CharMaps {
    pub fn new(homoglyphs: BTreeMap<char, char>, keyboard: BTreeMap<char, Vec<char>>) -> Self {
        CharMaps { homoglyphs, keyboard }
    }

    pub fn homoglyph(&self, c: char) -> Option<char> {
        self.homoglyphs.get(&c).copied()
    }

    pub fn keyboard_neighbors(&self, c: char) -> &[char] {
        self.keyboard.get(&c).map_or(&[], Vec::as_slice)
    }

    pub fn homoglyph_table(&self) -> &BTreeMap<char, char> {
        &self.homoglyphs
    }

    /// Overrides entries from `char<TAB>substitute` lines.
    pub fn with_homoglyph_file(mut self, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        for (n, (key, subs)) in parse_char_table(&std::fs::read_to_string(path)?, path)?.into_iter().enumerate() {
            match subs.as_slice() {
                [s] if *s != key => {
                    self.homoglyphs.insert(key, *s);
                }
                _ => return Err(Error::parse(path, n + 1, "expected one substitute differing from its key")),
            }
        }
        Ok(self)
    }

    /// Overrides entries from `char<TAB>neighbours` lines.
    pub fn with_keyboard_file(mut self, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        for (key, subs) in parse_char_table(&std::fs::read_to_string(path)?, path)? {
            self.keyboard.insert(key, subs);
        }
        Ok(self)
    }
}

fn parse_char_table(source: &str, origin: &Path) -> Result<Vec<(char, Vec<char>)>> {
    let mut out = Vec::new();
    for (n, line) in source.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let (key, subs) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(origin, n + 1, "expected `char<TAB>chars`"))?;
        let mut key_chars = key.chars();
        let (Some(k), None) = (key_chars.next(), key_chars.next()) else {
            return Err(Error::parse(origin, n + 1, "key must be a single character"));
        };
        out.push((k, subs.chars().collect()));
    }
    Ok(out)
}
