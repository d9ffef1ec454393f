use std::collections::{HashMap, HashSet};
use std::path::Path;

use crate::error::{Error, Result};
use crate::text::PosTag;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LexiconKind {
    /// WordNet-style thesaurus.
    Thesaurus,
    /// HowNet-style lexicon: synonyms share a sememe and part of speech.
    Sememe,
}

/// Headword → ordered synonyms, each optionally tagged with a part of speech.
#[derive(Clone, Debug)]
pub struct SynonymLexicon {
    kind: LexiconKind,
    order: Vec<String>,
    entries: HashMap<String, Vec<(String, Option<PosTag>)>>,
}

fn parse_tagged(item: &str) -> Result<(String, Option<PosTag>), String> {
    match item.rsplit_once(':') {
        Some((w, t)) => Ok((w.trim().to_string(), Some(t.trim().parse()?))),
        None => Ok((item.trim().to_string(), None)),
    }
}

impl SynonymLexicon {
    pub fn new(kind: LexiconKind) -> Self {
        SynonymLexicon {
            kind,
            order: Vec::new(),
            entries: HashMap::new(),
        }
    }

    pub fn from_entries<I, S>(kind: LexiconKind, entries: I) -> Self
    where
        I: IntoIterator<Item = (S, Vec<(S, Option<PosTag>)>)>,
        S: Into<String>,
    {
        let mut lex = Self::new(kind);
        for (head, syns) in entries {
            lex.insert(head.into(), syns.into_iter().map(|(s, t)| (s.into(), t)).collect());
        }
        lex
    }

    fn insert(&mut self, head: String, synonyms: Vec<(String, Option<PosTag>)>) {
        let key = head.to_lowercase();
        let synonyms: Vec<_> = synonyms
            .into_iter()
            .filter(|(s, _)| !s.is_empty() && s.to_lowercase() != key)
            .collect();
        if !self.entries.contains_key(&key) {
            self.order.push(key.clone());
        }
        self.entries.entry(key).or_default().extend(synonyms);
    }

    /// Parses `headword<TAB>syn[:TAG][,syn[:TAG]...]` lines.
    pub fn parse(kind: LexiconKind, source: &str, origin: &Path) -> Result<Self> {
        let mut lex = Self::new(kind);
        for (n, line) in source.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (head, rest) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(origin, n + 1, "expected `word<TAB>synonyms`"))?;
            let syns = rest
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(parse_tagged)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Error::parse(origin, n + 1, e))?;
            lex.insert(head.trim().to_string(), syns);
        }
        Ok(lex)
    }

    pub fn load(kind: LexiconKind, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(kind, &std::fs::read_to_string(path)?, path)
    }

    /// Writes the lexicon back out in the format [`SynonymLexicon::parse`] reads.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for head in &self.order {
            if self.entries[head].is_empty() {
                continue;
            }
            let syns: Vec<String> = self.entries[head]
                .iter()
                .map(|(s, t)| match t {
                    Some(t) => format!("{s}:{t}"),
                    None => s.clone(),
                })
                .collect();
            out.push_str(head);
            out.push('\t');
            out.push_str(&syns.join(","));
            out.push('\n');
        }
        out
    }

    pub fn kind(&self) -> LexiconKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &[(String, Option<PosTag>)])> {
        self.order.iter().map(|h| (h.as_str(), self.entries[h].as_slice()))
    }

    /// Synonyms in file order. With `pos` set, only synonyms carrying that tag
    /// (or no tag at all) are returned.
    pub fn synonyms(&self, word: &str, pos: Option<PosTag>) -> Vec<&str> {
        let Some(syns) = self.entries.get(&word.to_lowercase()) else {
            return Vec::new();
        };
        syns.iter()
            .filter(|(_, tag)| match (pos, tag) {
                (Some(p), Some(t)) => p == *t,
                _ => true,
            })
            .map(|(s, _)| s.as_str())
            .collect()
    }
}

/// Case-insensitive stopword set.
#[derive(Clone, Debug, Default)]
pub struct StopwordSet {
    words: HashSet<String>,
}

impl StopwordSet {
    pub fn new<I: IntoIterator<Item = S>, S: AsRef<str>>(words: I) -> Self {
        StopwordSet {
            words: words.into_iter().map(|w| w.as_ref().trim().to_lowercase()).filter(|w| !w.is_empty()).collect(),
        }
    }

    /// One word per line.
    pub fn parse(source: &str) -> Self {
        Self::new(source.lines())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Lemma → inflected surface forms.
#[derive(Clone, Debug, Default)]
pub struct InflectionTable {
    lemmas: Vec<(String, Vec<(String, PosTag)>)>,
    by_form: HashMap<String, Vec<usize>>,
}

impl InflectionTable {
    pub fn from_entries<S: Into<String>>(entries: Vec<(S, Vec<(S, PosTag)>)>) -> Self {
        let mut table = InflectionTable::default();
        for (lemma, forms) in entries {
            table.push(lemma.into(), forms.into_iter().map(|(f, t)| (f.into(), t)).collect());
        }
        table
    }

    fn push(&mut self, lemma: String, forms: Vec<(String, PosTag)>) {
        let idx = self.lemmas.len();
        for (f, _) in &forms {
            let slot = self.by_form.entry(f.to_lowercase()).or_default();
            if !slot.contains(&idx) {
                slot.push(idx);
            }
        }
        self.lemmas.push((lemma.to_lowercase(), forms));
    }

    /// Parses `lemma<TAB>form:TAG[,form:TAG...]` lines.
    pub fn parse(source: &str, origin: &Path) -> Result<Self> {
        let mut table = InflectionTable::default();
        for (n, line) in source.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (lemma, rest) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(origin, n + 1, "expected `lemma<TAB>forms`"))?;
            let mut forms = Vec::new();
            for item in rest.split(',').filter(|s| !s.trim().is_empty()) {
                match parse_tagged(item).map_err(|e| Error::parse(origin, n + 1, e))? {
                    (f, Some(t)) => forms.push((f, t)),
                    (f, None) => {
                        return Err(Error::parse(origin, n + 1, format!("form `{f}` has no tag")))
                    }
                }
            }
            table.push(lemma.trim().to_string(), forms);
        }
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&std::fs::read_to_string(path)?, path)
    }

    /// Other forms of every lemma that lists `word`, restricted to the tag
    /// `word` carries under that lemma.
    pub fn inflections_of(&self, word: &str) -> Vec<String> {
        let key = word.to_lowercase();
        let mut out: Vec<String> = Vec::new();
        for &li in self.by_form.get(&key).into_iter().flatten() {
            let forms = &self.lemmas[li].1;
            let tags: Vec<PosTag> = forms
                .iter()
                .filter(|(f, _)| f.to_lowercase() == key)
                .map(|(_, t)| *t)
                .collect();
            for (f, t) in forms {
                if tags.contains(t) && f.to_lowercase() != key && !out.contains(f) {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.lemmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lemmas.is_empty()
    }
}
