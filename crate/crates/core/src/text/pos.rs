use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::AttackedText;
use crate::error::{Error, Result};

/// Universal part-of-speech tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Pron,
    Det,
    Adp,
    Num,
    Conj,
    Prt,
    Punct,
    Other,
}

impl PosTag {
    pub const ALL: [PosTag; 12] = [
        PosTag::Noun,
        PosTag::Verb,
        PosTag::Adj,
        PosTag::Adv,
        PosTag::Pron,
        PosTag::Det,
        PosTag::Adp,
        PosTag::Num,
        PosTag::Conj,
        PosTag::Prt,
        PosTag::Punct,
        PosTag::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Verb => "VERB",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Pron => "PRON",
            PosTag::Det => "DET",
            PosTag::Adp => "ADP",
            PosTag::Num => "NUM",
            PosTag::Conj => "CONJ",
            PosTag::Prt => "PRT",
            PosTag::Punct => "PUNCT",
            PosTag::Other => "OTHER",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        PosTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .or_else(|| match s {
                "X" | "x" => Some(PosTag::Other),
                "." => Some(PosTag::Punct),
                _ => None,
            })
            .ok_or_else(|| format!("unknown part-of-speech tag `{s}`"))
    }
}

/// Word → tags table; the first listed tag wins when a word is ambiguous.
#[derive(Clone, Debug, Default)]
pub struct PosLexicon {
    entries: HashMap<String, Vec<PosTag>>,
}

impl PosLexicon {
    pub fn from_entries<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, Vec<PosTag>)>,
        S: AsRef<str>,
    {
        PosLexicon {
            entries: entries
                .into_iter()
                .map(|(w, t)| (w.as_ref().to_lowercase(), t))
                .collect(),
        }
    }

    /// Parses `word<TAB>TAG[|TAG...]` lines.
    pub fn parse(source: &str, origin: &Path) -> Result<Self> {
        let mut entries = HashMap::new();
        for (n, line) in source.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (word, tags) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(origin, n + 1, "expected `word<TAB>TAGS`"))?;
            let tags = tags
                .split('|')
                .map(|t| t.trim().parse::<PosTag>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Error::parse(origin, n + 1, e))?;
            entries.insert(word.trim().to_lowercase(), tags);
        }
        Ok(PosLexicon { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&std::fs::read_to_string(path)?, path)
    }

    pub fn tag(&self, word: &str) -> PosTag {
        self.entries
            .get(&word.to_lowercase())
            .and_then(|t| t.first().copied())
            .unwrap_or(PosTag::Other)
    }

    pub fn tags(&self, text: &AttackedText) -> Vec<PosTag> {
        text.words().iter().map(|w| self.tag(w)).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
