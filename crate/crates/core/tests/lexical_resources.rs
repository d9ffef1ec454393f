use std::io::Write;
use std::path::Path;

use advtext::resources::{CharMaps, EmbeddingStore, InflectionTable, LexiconKind, Resources, StopwordSet, SynonymLexicon};
use advtext::text::PosTag;
use advtext::Error;
use proptest::prelude::*;

fn toy_store() -> EmbeddingStore {
    EmbeddingStore::from_vectors(
        "toy",
        vec![("a", vec![1.0, 0.0]), ("b", vec![0.9, 0.1]), ("c", vec![0.0, 1.0])],
    )
    .unwrap()
}

#[test]
fn toy_neighbors_follow_hand_cosines() {
    let store = toy_store();
    let nn = store.nearest_neighbors("a", 2);
    assert_eq!(nn.len(), 2);
    assert_eq!(nn[0].0, "b");
    assert!((nn[0].1 - 0.9 / 0.82f64.sqrt()).abs() < 1e-12);
    assert!((nn[0].1 - 0.994).abs() < 1e-3);
    assert_eq!(nn[1], ("c".to_string(), 0.0));
    assert!(store.nearest_neighbors("a", 0).is_empty());
    assert!(store.nearest_neighbors("zzz", 3).is_empty());
    assert_eq!(store.nearest_neighbors("a", 10).len(), 2);
}

#[test]
fn malformed_embedding_lines_report_their_line() {
    let err = EmbeddingStore::parse("a 1 0\nb 1\n", "x", Path::new("emb.txt")).unwrap_err();
    assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    let err = EmbeddingStore::parse("a 1 0\n\nc 1 zero\n", "x", Path::new("emb.txt")).unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
}

#[test]
fn embeddings_load_from_a_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "a 1 0\nb 0.9 0.1\nc 0 1").unwrap();
    let store = EmbeddingStore::load(f.path()).unwrap();
    assert_eq!(store.dim(), 2);
    assert_eq!(store.len(), 3);
    assert_eq!(store.nearest_neighbors("a", 1)[0].0, "b");
}

#[test]
fn synonyms_filter_by_tag() {
    let lex = SynonymLexicon::from_entries(
        LexiconKind::Thesaurus,
        vec![("good", vec![("fine", Some(PosTag::Adj)), ("well", Some(PosTag::Adv))])],
    );
    assert_eq!(lex.synonyms("good", Some(PosTag::Adj)), ["fine"]);
    assert_eq!(lex.synonyms("good", None), ["fine", "well"]);
    assert!(lex.synonyms("bad", None).is_empty());
}

#[test]
fn lexicon_drops_self_synonyms() {
    let lex = SynonymLexicon::from_entries(LexiconKind::Sememe, vec![("Good", vec![("good", None), ("nice", None)])]);
    assert_eq!(lex.synonyms("good", None), ["nice"]);
}

#[test]
fn stopwords_and_inflections_ignore_case() {
    let stop = StopwordSet::new(["the", "a"]);
    assert!(stop.contains("The"));
    assert!(!stop.contains("film"));
    let inf = InflectionTable::from_entries(vec![(
        "run",
        vec![("run", PosTag::Verb), ("runs", PosTag::Verb), ("ran", PosTag::Verb), ("run", PosTag::Noun)],
    )]);
    assert_eq!(inf.inflections_of("RUNS"), ["run", "ran"]);
}

#[test]
fn character_tables_cover_lowercase_and_digits() {
    let maps = CharMaps::default();
    for c in ('a'..='z').chain('0'..='9') {
        let h = maps.homoglyph(c).unwrap_or_else(|| panic!("no homoglyph for {c}"));
        assert_ne!(h, c);
        assert!(!maps.keyboard_neighbors(c).is_empty(), "no keyboard neighbors for {c}");
    }
}

#[test]
fn bundled_resources_are_consistent() {
    let res = Resources::bundled();
    assert!(res.embeddings.len() > 100);
    for (head, syns) in res.thesaurus.entries() {
        assert!(syns.iter().all(|(s, _)| s.to_lowercase() != head));
    }
    let sample: Vec<String> = res.thesaurus.entries().take(20).map(|(h, _)| h.to_string()).collect();
    for w in sample {
        for (n, _) in res.embeddings.nearest_neighbors(&w, 50) {
            assert_ne!(n.to_lowercase(), w);
        }
    }
}

fn vector_strategy(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn neighbor_lists_exclude_the_query_and_descend(vs in prop::collection::vec(vector_strategy(4), 2..25), k in 0usize..40) {
        let entries: Vec<(String, Vec<f64>)> = vs.into_iter().enumerate().map(|(i, v)| (format!("w{i}"), v)).collect();
        let n = entries.len();
        let store = EmbeddingStore::from_vectors("p", entries).unwrap();
        for i in 0..n {
            let q = format!("w{i}");
            let nn = store.nearest_neighbors(&q, k);
            prop_assert_eq!(nn.len(), k.min(n - 1));
            prop_assert!(nn.iter().all(|(w, _)| *w != q));
            prop_assert!(nn.windows(2).all(|p| p[0].1 >= p[1].1));
            prop_assert!(nn.iter().all(|(_, c)| (-1.0 - 1e-12..=1.0 + 1e-12).contains(c)));
        }
    }

    #[test]
    fn cosine_is_symmetric_and_self_similar(u in vector_strategy(5), v in vector_strategy(5)) {
        prop_assume!(u.iter().any(|x| x.abs() > 1e-6) && v.iter().any(|x| x.abs() > 1e-6));
        let store = EmbeddingStore::from_vectors("p", vec![("u", u), ("v", v)]).unwrap();
        prop_assert!((store.cosine("u", "u").unwrap() - 1.0).abs() < 1e-12);
        prop_assert_eq!(store.cosine("u", "v").unwrap(), store.cosine("v", "u").unwrap());
    }

    #[test]
    fn lexicon_dump_round_trips(entries in prop::collection::vec(
        ("[a-z]{1,6}", prop::collection::vec(("[a-z]{1,6}", prop::option::of(prop::sample::select(PosTag::ALL.to_vec()))), 1..5)),
        0..12,
    )) {
        let lex = SynonymLexicon::from_entries(LexiconKind::Thesaurus, entries);
        let back = SynonymLexicon::parse(LexiconKind::Thesaurus, &lex.dump(), Path::new("dump")).unwrap();
        let a: Vec<_> = lex.entries().filter(|(_, s)| !s.is_empty()).collect();
        let b: Vec<_> = back.entries().collect();
        prop_assert_eq!(a, b);
    }
}
