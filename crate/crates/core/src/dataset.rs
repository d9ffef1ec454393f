//! Delimited-file datasets.
//!
//! A dataset file is CSV, or TSV when its extension is `.tsv`. The header
//! decides the layout:
//!
//! * `text[,label]` for single-input classification,
//! * `premise,hypothesis[,label]` or `text,text2[,label]` for pairs,
//! * `source,reference` for text-to-text data.
//!
//! Labels are non-negative integers.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::resources::bundled;
use crate::text::AttackedText;

/// One input with its expected answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example {
    /// `(column name, text)` pairs in input order.
    pub inputs: Vec<(String, String)>,
    pub label: Option<usize>,
    /// Reference output for text-to-text examples.
    pub reference: Option<String>,
}

impl Example {
    pub fn text(text: impl Into<String>, label: usize) -> Self {
        Example {
            inputs: vec![("text".into(), text.into())],
            label: Some(label),
            reference: None,
        }
    }

    pub fn unlabeled(text: impl Into<String>) -> Self {
        Example {
            inputs: vec![("text".into(), text.into())],
            label: None,
            reference: None,
        }
    }

    pub fn pair(premise: impl Into<String>, hypothesis: impl Into<String>, label: usize) -> Self {
        Example {
            inputs: vec![("premise".into(), premise.into()), ("hypothesis".into(), hypothesis.into())],
            label: Some(label),
            reference: None,
        }
    }

    pub fn translation(source: impl Into<String>, reference: impl Into<String>) -> Self {
        Example {
            inputs: vec![("source".into(), source.into())],
            label: None,
            reference: Some(reference.into()),
        }
    }

    pub fn attacked_text(&self) -> AttackedText {
        if self.inputs.len() == 1 {
            AttackedText::new(&self.inputs[0].1)
        } else {
            AttackedText::with_columns(&self.inputs)
        }
    }

    /// The model-facing string (columns joined by newlines).
    pub fn joined_text(&self) -> String {
        self.attacked_text().printable()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dataset {
    pub examples: Vec<Example>,
}

impl Dataset {
    pub fn new(examples: Vec<Example>) -> Self {
        Dataset { examples }
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    /// Keeps at most the first `n` examples.
    pub fn truncated(mut self, n: usize) -> Self {
        self.examples.truncate(n);
        self
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let content = std::fs::read_to_string(path)?;
        Self::parse(&content, delimiter_for(path), path)
    }

    pub fn parse(content: &str, delimiter: u8, origin: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .delimiter(delimiter)
            .quoting(delimiter != b'\t')
            .from_reader(content.as_bytes());
        let headers: Vec<String> = reader.headers()?.iter().map(|h| h.trim().to_string()).collect();
        let col = |name: &str| headers.iter().position(|h| h == name);
        let (inputs, names): (Vec<usize>, Vec<&str>) = if let (Some(s), Some(_)) = (col("source"), col("reference")) {
            (vec![s], vec!["source"])
        } else if let (Some(p), Some(h)) = (col("premise"), col("hypothesis")) {
            (vec![p, h], vec!["premise", "hypothesis"])
        } else if let (Some(a), Some(b)) = (col("text"), col("text2")) {
            (vec![a, b], vec!["premise", "hypothesis"])
        } else if let Some(t) = col("text") {
            (vec![t], vec!["text"])
        } else {
            return Err(Error::parse(origin, 1, format!("unrecognised header {headers:?}")));
        };
        let label_col = col("label");
        let reference_col = col("reference");
        let mut examples = Vec::new();
        for (row, record) in reader.records().enumerate() {
            let record = record?;
            let line = row + 2;
            let field = |i: usize| {
                record
                    .get(i)
                    .map(str::to_string)
                    .ok_or_else(|| Error::parse(origin, line, "missing column"))
            };
            let ins = inputs
                .iter()
                .zip(&names)
                .map(|(&i, n)| Ok((n.to_string(), field(i)?)))
                .collect::<Result<Vec<_>>>()?;
            let label = match label_col {
                Some(i) => {
                    let raw = field(i)?;
                    Some(
                        raw.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::parse(origin, line, format!("label {raw:?} is not a non-negative integer")))?,
                    )
                }
                None => None,
            };
            let reference = reference_col.map(field).transpose()?;
            examples.push(Example {
                inputs: ins,
                label,
                reference,
            });
        }
        Ok(Dataset { examples })
    }

    pub fn bundled_sentiment_train() -> Self {
        Self::parse(bundled::SENTIMENT_TRAIN, b'\t', Path::new("<bundled>")).expect("bundled corpus parses")
    }

    pub fn bundled_sentiment_test() -> Self {
        Self::parse(bundled::SENTIMENT_TEST, b'\t', Path::new("<bundled>")).expect("bundled corpus parses")
    }

    pub fn bundled_translation() -> Self {
        Self::parse(bundled::TRANSLATION, b'\t', Path::new("<bundled>")).expect("bundled corpus parses")
    }

    /// `(joined text, label)` pairs for training; every example needs a label.
    pub fn labeled(&self) -> Result<Vec<(String, usize)>> {
        self.examples
            .iter()
            .map(|e| {
                e.label
                    .map(|l| (e.joined_text(), l))
                    .ok_or_else(|| Error::config("training data needs a label column"))
            })
            .collect()
    }

    /// Largest label plus one.
    pub fn num_labels(&self) -> usize {
        self.examples.iter().filter_map(|e| e.label).max().map_or(0, |m| m + 1)
    }
}

/// Tab for `.tsv` files, comma otherwise.
pub fn delimiter_for(path: &Path) -> u8 {
    match path.extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("tsv") => b'\t',
        _ => b',',
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_layout() {
        let o = Path::new("t");
        let d = Dataset::parse("text,label\n\"a, b\",1\n", b',', o).unwrap();
        assert_eq!(d.examples, vec![Example::text("a, b", 1)]);
        let d = Dataset::parse("premise,hypothesis,label\np,h,2\n", b',', o).unwrap();
        assert_eq!(d.examples, vec![Example::pair("p", "h", 2)]);
        let d = Dataset::parse("source\treference\nx\ty\n", b'\t', o).unwrap();
        assert_eq!(d.examples, vec![Example::translation("x", "y")]);
    }

    #[test]
    fn rejects_bad_labels_and_headers() {
        let o = Path::new("t");
        assert!(Dataset::parse("text,label\na,pos\n", b',', o).is_err());
        assert!(Dataset::parse("sentence,label\na,1\n", b',', o).is_err());
    }

    #[test]
    fn bundled_corpora_load() {
        assert_eq!(Dataset::bundled_sentiment_train().len(), 800);
        assert_eq!(Dataset::bundled_sentiment_test().num_labels(), 2);
        assert!(!Dataset::bundled_translation().is_empty());
    }
}
