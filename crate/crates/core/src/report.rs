//! Attack result writers.
//!
//! Every writer sees the same stream: one [`ResultWriter::write_result`]
//! call per example in dataset order, then one [`ResultWriter::finish`].
//!
//! Changed words are marked as follows:
//!
//! | format | original side | perturbed side |
//! |--------|---------------|----------------|
//! | stdout | red           | green          |
//! | txt    | `[[word]]`    | `[[word]]`     |
//! | html   | `<del>`       | `<ins>`        |

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::attack::{AttackResult, AttackStatus, AttackSummary, SummaryRow};
use crate::error::{Error, Result};
use crate::text::AttackedText;

pub const CSV_HEADER: [&str; 7] = [
    "original_text",
    "perturbed_text",
    "original_output",
    "perturbed_output",
    "ground_truth",
    "status",
    "num_queries",
];

pub trait ResultWriter {
    fn write_result(&mut self, index: usize, result: &AttackResult) -> Result<()>;
    fn finish(&mut self, summary: &AttackSummary) -> Result<()>;
}

/// Positions of changed words in the original and the perturbed text.
/// Failed and skipped attacks mark nothing.
fn changed_positions(result: &AttackResult) -> (BTreeSet<usize>, BTreeSet<usize>) {
    if matches!(result.status, AttackStatus::Failed | AttackStatus::Skipped) {
        return (BTreeSet::new(), BTreeSet::new());
    }
    let mut before = BTreeSet::new();
    let mut after = BTreeSet::new();
    for change in AttackedText::diff(&result.original, &result.perturbed) {
        if let Some((i, _)) = change.reference {
            before.insert(i);
        }
        if let Some((i, _)) = change.candidate {
            after.insert(i);
        }
    }
    (before, after)
}

/// Rebuilds the printable text, passing each word and separator through
/// the given functions.
fn render(
    text: &AttackedText,
    marked: &BTreeSet<usize>,
    word: impl Fn(&str, bool) -> String,
    sep: impl Fn(&str) -> String,
) -> String {
    let mut out = sep(&text.separators()[0]);
    for (i, (w, s)) in text.words().iter().zip(&text.separators()[1..]).enumerate() {
        out.push_str(&word(w, marked.contains(&i)));
        out.push_str(&sep(s));
    }
    out
}

fn ground_truth(result: &AttackResult) -> String {
    result.ground_truth.map(|g| g.to_string()).unwrap_or_default()
}

fn banner(index: usize) -> String {
    let title = format!(" Result {} ", index + 1);
    let side = "-".repeat(30);
    format!("{side}{title}{side}")
}

/// Human-readable listing, coloured with ANSI escapes when `color` is set.
pub struct TextWriter<W: Write> {
    out: W,
    color: bool,
}

impl<W: Write> TextWriter<W> {
    pub fn plain(out: W) -> Self {
        TextWriter { out, color: false }
    }

    pub fn colored(out: W) -> Self {
        TextWriter { out, color: true }
    }

    fn mark(&self, word: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            format!("[[{word}]]")
        }
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

impl<W: Write> ResultWriter for TextWriter<W> {
    fn write_result(&mut self, index: usize, result: &AttackResult) -> Result<()> {
        let (before, after) = changed_positions(result);
        let header = match result.status {
            AttackStatus::Successful | AttackStatus::Maximized => format!(
                "[{}] {} --> {}",
                result.status,
                result.original_output.label_string(),
                result.perturbed_output.label_string()
            ),
            _ => format!("[{}] {}", result.status, result.original_output.label_string()),
        };
        writeln!(self.out, "{}", banner(index))?;
        writeln!(self.out, "{header} (queries: {})", result.num_queries)?;
        writeln!(self.out)?;
        let original = render(&result.original, &before, |w, m| if m { self.mark(w, "91") } else { w.to_string() }, str::to_string);
        writeln!(self.out, "{original}")?;
        if result.status != AttackStatus::Skipped && result.status != AttackStatus::Failed {
            writeln!(self.out)?;
            let perturbed =
                render(&result.perturbed, &after, |w, m| if m { self.mark(w, "92") } else { w.to_string() }, str::to_string);
            writeln!(self.out, "{perturbed}")?;
        }
        writeln!(self.out)?;
        Ok(())
    }

    fn finish(&mut self, summary: &AttackSummary) -> Result<()> {
        writeln!(self.out, "{}", "=".repeat(74))?;
        writeln!(self.out, "{summary}")?;
        self.out.flush()?;
        Ok(())
    }
}

/// RFC 4180 CSV with [`CSV_HEADER`]. The header is written even when no
/// result follows.
pub struct CsvWriter<W: Write> {
    out: csv::Writer<W>,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(out: W) -> Result<Self> {
        let mut out = csv::WriterBuilder::new().quote_style(csv::QuoteStyle::Necessary).from_writer(out);
        out.write_record(CSV_HEADER)?;
        Ok(CsvWriter { out })
    }

    pub fn into_inner(self) -> Result<W> {
        self.out.into_inner().map_err(|e| Error::Io(e.into_error()))
    }
}

impl<W: Write> ResultWriter for CsvWriter<W> {
    fn write_result(&mut self, _index: usize, result: &AttackResult) -> Result<()> {
        self.out.write_record([
            result.original.printable(),
            result.perturbed.printable(),
            result.original_output.label_string(),
            result.perturbed_output.label_string(),
            ground_truth(result),
            result.status.to_string(),
            result.num_queries.to_string(),
        ])?;
        Ok(())
    }

    fn finish(&mut self, _summary: &AttackSummary) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

pub fn escape_html(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '&' => out.push_str("&amp;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            '\n' => out.push_str("<br>"),
            c => out.push(c),
        }
    }
    out
}

/// A standalone HTML page with one table row per result.
pub struct HtmlWriter<W: Write> {
    out: W,
}

impl<W: Write> HtmlWriter<W> {
    pub fn new(mut out: W) -> Result<Self> {
        writeln!(out, "<!DOCTYPE html>")?;
        writeln!(out, "<html><head><meta charset=\"utf-8\"><title>Attack results</title>")?;
        writeln!(
            out,
            "<style>table{{border-collapse:collapse}}td,th{{border:1px solid #999;padding:4px;vertical-align:top}}\
             del{{background:#fcc}}ins{{background:#cfc;text-decoration:none}}</style>"
        )?;
        writeln!(out, "</head><body>")?;
        writeln!(out, "<table>")?;
        writeln!(
            out,
            "<tr><th>#</th><th>status</th><th>original</th><th>perturbed</th>\
             <th>original output</th><th>perturbed output</th><th>ground truth</th><th>queries</th></tr>"
        )?;
        Ok(HtmlWriter { out })
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

impl<W: Write> ResultWriter for HtmlWriter<W> {
    fn write_result(&mut self, index: usize, result: &AttackResult) -> Result<()> {
        let (before, after) = changed_positions(result);
        let tag = |t: &'static str| {
            move |w: &str, m: bool| {
                if m {
                    format!("<{t}>{}</{t}>", escape_html(w))
                } else {
                    escape_html(w)
                }
            }
        };
        writeln!(
            self.out,
            "<tr><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td></tr>",
            index + 1,
            result.status,
            render(&result.original, &before, tag("del"), escape_html),
            render(&result.perturbed, &after, tag("ins"), escape_html),
            escape_html(&result.original_output.label_string()),
            escape_html(&result.perturbed_output.label_string()),
            ground_truth(result),
            result.num_queries,
        )?;
        Ok(())
    }

    fn finish(&mut self, summary: &AttackSummary) -> Result<()> {
        writeln!(self.out, "</table>")?;
        writeln!(self.out, "<pre>{}</pre>", escape_html(&summary.to_string()))?;
        writeln!(self.out, "</body></html>")?;
        self.out.flush()?;
        Ok(())
    }
}

/// One JSON-lines record per attacked example.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub index: usize,
    pub status: AttackStatus,
    pub original_text: String,
    pub perturbed_text: String,
    pub original_output: crate::model::ModelOutput,
    pub perturbed_output: crate::model::ModelOutput,
    pub ground_truth: Option<usize>,
    pub num_queries: usize,
    pub words_perturbed: usize,
    pub original_num_words: usize,
}

impl ResultRecord {
    pub fn from_result(index: usize, result: &AttackResult) -> Self {
        ResultRecord {
            index,
            status: result.status,
            original_text: result.original.printable(),
            perturbed_text: result.perturbed.printable(),
            original_output: result.original_output.clone(),
            perturbed_output: result.perturbed_output.clone(),
            ground_truth: result.ground_truth,
            num_queries: result.num_queries,
            words_perturbed: result.words_perturbed(),
            original_num_words: result.original.num_words(),
        }
    }

    pub fn summary_row(&self) -> SummaryRow {
        SummaryRow {
            status: self.status,
            words_perturbed: self.words_perturbed,
            original_num_words: self.original_num_words,
            num_queries: self.num_queries,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Line {
    Summary { summary: AttackSummary },
    Result(ResultRecord),
}

pub struct JsonlWriter<W: Write> {
    out: W,
}

impl<W: Write> JsonlWriter<W> {
    pub fn new(out: W) -> Self {
        JsonlWriter { out }
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

impl<W: Write> ResultWriter for JsonlWriter<W> {
    fn write_result(&mut self, index: usize, result: &AttackResult) -> Result<()> {
        serde_json::to_writer(&mut self.out, &ResultRecord::from_result(index, result))?;
        writeln!(self.out)?;
        Ok(())
    }

    fn finish(&mut self, summary: &AttackSummary) -> Result<()> {
        serde_json::to_writer(&mut self.out, &Line::Summary { summary: summary.clone() })?;
        writeln!(self.out)?;
        self.out.flush()?;
        Ok(())
    }
}

/// A JSON-lines log read back into memory.
#[derive(Clone, Debug, PartialEq)]
pub struct JsonlLog {
    pub records: Vec<ResultRecord>,
    /// The trailing summary record, if the run finished.
    pub summary: Option<AttackSummary>,
}

impl JsonlLog {
    pub fn read(input: impl BufRead) -> Result<Self> {
        let mut records = Vec::new();
        let mut summary = None;
        for line in input.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str(&line)? {
                Line::Result(r) => records.push(r),
                Line::Summary { summary: s } => summary = Some(s),
            }
        }
        Ok(JsonlLog { records, summary })
    }

    /// The summary recomputed from the per-example records.
    pub fn recomputed_summary(&self) -> AttackSummary {
        AttackSummary::from_rows(self.records.iter().map(ResultRecord::summary_row))
    }
}

/// Sends every call to each writer in turn.
#[derive(Default)]
pub struct Fanout<'a> {
    writers: Vec<Box<dyn ResultWriter + 'a>>,
}

impl<'a> Fanout<'a> {
    pub fn new() -> Self {
        Fanout { writers: Vec::new() }
    }

    pub fn push(&mut self, writer: impl ResultWriter + 'a) {
        self.writers.push(Box::new(writer));
    }

    pub fn len(&self) -> usize {
        self.writers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.writers.is_empty()
    }
}

impl ResultWriter for Fanout<'_> {
    fn write_result(&mut self, index: usize, result: &AttackResult) -> Result<()> {
        self.writers.iter_mut().try_for_each(|w| w.write_result(index, result))
    }

    fn finish(&mut self, summary: &AttackSummary) -> Result<()> {
        self.writers.iter_mut().try_for_each(|w| w.finish(summary))
    }
}

/// Writes a whole run through `writer`.
pub fn write_all(writer: &mut dyn ResultWriter, results: &[AttackResult], summary: &AttackSummary) -> Result<()> {
    for (i, r) in results.iter().enumerate() {
        writer.write_result(i, r)?;
    }
    writer.finish(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn html_escaping() {
        assert_eq!(escape_html("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
    }

    #[test]
    fn empty_csv_still_has_a_header() {
        let mut w = CsvWriter::new(Vec::new()).unwrap();
        w.finish(&AttackSummary::from_rows([])).unwrap();
        let bytes = w.into_inner().unwrap();
        assert_eq!(
            String::from_utf8(bytes).unwrap(),
            "original_text,perturbed_text,original_output,perturbed_output,ground_truth,status,num_queries\n"
        );
    }

    #[test]
    fn summary_line_is_recognized() {
        let mut w = JsonlWriter::new(Vec::new());
        w.finish(&AttackSummary::from_rows([])).unwrap();
        let log = JsonlLog::read(&w.into_inner()[..]).unwrap();
        assert!(log.records.is_empty());
        assert_eq!(log.summary, Some(AttackSummary::from_rows([])));
    }
}
