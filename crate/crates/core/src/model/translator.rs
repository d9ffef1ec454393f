use std::collections::HashMap;
use std::path::Path;

use super::TextToTextModel;
use crate::error::{Error, Result};
use crate::text::segment;

/// Word-by-word dictionary substitution. Lookups are case-insensitive and
/// unknown words are copied through; punctuation and spacing are kept.
#[derive(Clone, Debug, Default)]
pub struct DictionaryTranslator {
    id: String,
    dictionary: HashMap<String, String>,
}

impl DictionaryTranslator {
    pub fn new<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        DictionaryTranslator {
            id: "dictionary-translator".to_string(),
            dictionary: entries
                .into_iter()
                .map(|(k, v)| (k.into().to_lowercase(), v.into()))
                .collect(),
        }
    }

    /// Parses `source<TAB>target` lines.
    pub fn parse(source: &str, origin: &Path) -> Result<Self> {
        let mut entries = Vec::new();
        for (n, line) in source.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(origin, n + 1, "expected `word<TAB>translation`"))?;
            entries.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(Self::new(entries))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&std::fs::read_to_string(path)?, path)
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn len(&self) -> usize {
        self.dictionary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dictionary.is_empty()
    }

    pub fn translate(&self, text: &str) -> String {
        let (words, seps) = segment(text);
        let mut out = seps[0].clone();
        for (w, s) in words.iter().zip(&seps[1..]) {
            out.push_str(self.dictionary.get(&w.to_lowercase()).unwrap_or(w));
            out.push_str(s);
        }
        out
    }
}

impl TextToTextModel for DictionaryTranslator {
    fn id(&self) -> &str {
        &self.id
    }

    fn generate(&self, texts: &[String]) -> Vec<String> {
        texts.iter().map(|t| self.translate(t)).collect()
    }
}
