use std::io::Cursor;

use advtext::attack::{build_recipe, AttackResult, AttackStatus, AttackSummary};
use advtext::dataset::{Dataset, Example};
use advtext::model::{bundled, Victim};
use advtext::report::{
    escape_html, write_all, CsvWriter, Fanout, HtmlWriter, JsonlLog, JsonlWriter, ResultRecord, TextWriter, CSV_HEADER,
};
use advtext::resources::Resources;

fn run(examples: &[Example]) -> (Vec<AttackResult>, AttackSummary) {
    let res = Resources::bundled();
    let attack = build_recipe("deepwordbug", &res, Victim::classifier(bundled::sentiment_classifier())).unwrap();
    attack.attack_dataset(examples, 1).unwrap()
}

struct Outputs {
    text: Vec<u8>,
    csv: Vec<u8>,
    html: Vec<u8>,
    jsonl: Vec<u8>,
}

fn render_all(results: &[AttackResult], summary: &AttackSummary) -> Outputs {
    let (mut text, mut csv, mut html, mut jsonl) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    {
        let mut fan = Fanout::new();
        fan.push(TextWriter::plain(&mut text));
        fan.push(CsvWriter::new(&mut csv).unwrap());
        fan.push(HtmlWriter::new(&mut html).unwrap());
        fan.push(JsonlWriter::new(&mut jsonl));
        assert_eq!(fan.len(), 4);
        write_all(&mut fan, results, summary).unwrap();
    }
    Outputs { text, csv, html, jsonl }
}

#[test]
fn every_format_sees_every_result() {
    let data = Dataset::bundled_sentiment_test().truncated(9).examples;
    let (results, summary) = run(&data);
    let out = render_all(&results, &summary);

    let mut reader = csv::Reader::from_reader(out.csv.as_slice());
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), results.len());
    for (row, r) in rows.iter().zip(&results) {
        assert_eq!(&row[0], r.original.printable());
        assert_eq!(&row[1], r.perturbed.printable());
        assert_eq!(AttackStatus::parse(&row[5]), Some(r.status));
        assert_eq!(row[6].parse::<usize>().unwrap(), r.num_queries);
    }

    let html = String::from_utf8(out.html).unwrap();
    assert_eq!(html.matches("<tr><td>").count(), results.len());
    assert!(html.trim_end().ends_with("</body></html>"));

    let text = String::from_utf8(out.text).unwrap();
    assert_eq!(text.matches(" Result ").count(), results.len());
    assert!(text.contains(&format!("Number of successful attacks: {}", summary.successful)));

    let log = JsonlLog::read(Cursor::new(out.jsonl)).unwrap();
    assert_eq!(log.records.len(), results.len());
}

#[test]
fn jsonl_summary_round_trips_exactly() {
    let data = Dataset::bundled_sentiment_test().truncated(12).examples;
    let (results, summary) = run(&data);
    let out = render_all(&results, &summary);
    let log = JsonlLog::read(Cursor::new(out.jsonl)).unwrap();
    let stored = log.summary.clone().unwrap();
    let recomputed = log.recomputed_summary();
    for (a, b) in [
        (stored.success_rate, summary.success_rate),
        (stored.mean_queries, summary.mean_queries),
        (stored.mean_perturbed_word_percent, summary.mean_perturbed_word_percent),
        (recomputed.success_rate, summary.success_rate),
        (recomputed.mean_perturbed_word_percent, summary.mean_perturbed_word_percent),
        (recomputed.accuracy_under_attack, summary.accuracy_under_attack),
    ] {
        assert_eq!(a.to_bits(), b.to_bits());
    }
    assert_eq!(stored, summary);
    assert_eq!(recomputed, summary);
    for (i, (rec, r)) in log.records.iter().zip(&results).enumerate() {
        assert_eq!(rec, &ResultRecord::from_result(i, r));
    }
}

#[test]
fn markup_in_inputs_is_escaped() {
    let data = vec![Example::text("<script>alert('x')</script> a dull & boring film", 0)];
    let (results, summary) = run(&data);
    let html = String::from_utf8(render_all(&results, &summary).html).unwrap();
    assert!(!html.contains("<script>"));
    assert!(html.contains("&lt;script&gt;"));
    assert_eq!(escape_html("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
}

#[test]
fn empty_runs_still_write_headers() {
    let summary = AttackSummary::from_results(&[]);
    let out = render_all(&[], &summary);
    let csv = String::from_utf8(out.csv).unwrap();
    assert_eq!(csv.trim_end(), CSV_HEADER.join(","));
    let html = String::from_utf8(out.html).unwrap();
    assert!(html.contains("<th>original</th>"));
    assert!(html.contains("</table>"));
    let log = JsonlLog::read(Cursor::new(out.jsonl)).unwrap();
    assert!(log.records.is_empty());
    assert_eq!(log.summary, Some(summary));
}

#[test]
fn plain_text_marks_changed_words() {
    let data = Dataset::bundled_sentiment_test().truncated(12).examples;
    let (results, summary) = run(&data);
    let successes = results.iter().filter(|r| r.status == AttackStatus::Successful).count();
    assert!(successes > 0);
    let text = String::from_utf8(render_all(&results, &summary).text).unwrap();
    assert!(text.matches("[[").count() >= 2 * successes);
    let mut colored = Vec::new();
    write_all(&mut TextWriter::colored(&mut colored), &results, &summary).unwrap();
    let colored = String::from_utf8(colored).unwrap();
    assert!(colored.contains("\x1b[91m") && colored.contains("\x1b[92m"));
}
