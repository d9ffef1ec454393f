use std::sync::Arc;

use advtext::attack::{Attack, AttackStatus};
use advtext::constraints::{ConstraintItem, RepeatModification, StopwordModification};
use advtext::dataset::{Dataset, Example};
use advtext::goal::{
    GoalContext, GoalFunction, GoalStatus, InputReduction, MinimizeBleu, NonOverlappingOutput, TargetedClassification,
    UntargetedClassification,
};
use advtext::model::{bundled, CountingClassifier, ModelOutput, Victim};
use advtext::resources::Resources;
use advtext::search::{BeamSearch, GreedyWordSwapWir, WirMethod};
use advtext::text::AttackedText;
use advtext::transform::{WordDeletion, WordSwapEmbedding};
use proptest::prelude::*;

fn ctx(truth: Option<usize>, original: ModelOutput, words: usize) -> GoalContext {
    GoalContext {
        ground_truth: truth,
        original_output: original,
        original_num_words: words,
    }
}

fn scores(p: &[f64]) -> ModelOutput {
    ModelOutput::Scores(p.to_vec())
}

fn text(s: &str) -> ModelOutput {
    ModelOutput::Text(s.to_string())
}

#[test]
fn untargeted_examples() {
    let t = AttackedText::new("x");
    let g = UntargetedClassification;
    let c = ctx(Some(0), scores(&[0.9, 0.1]), 1);
    let (s, st) = g.score(&c, &t, &scores(&[0.9, 0.1])).unwrap();
    assert!((s - 0.1).abs() < 1e-12);
    assert_eq!(st, GoalStatus::Searching);
    let (s, st) = g.score(&c, &t, &scores(&[0.4, 0.6])).unwrap();
    assert!((s - 0.6).abs() < 1e-12);
    assert_eq!(st, GoalStatus::Succeeded);
    let c1 = ctx(Some(1), scores(&[0.5, 0.5]), 1);
    assert_eq!(g.score(&c1, &t, &scores(&[0.5, 0.5])).unwrap().1, GoalStatus::Succeeded);
    assert!(g.score(&c, &t, &text("oops")).is_err());
    assert!(g.score(&ctx(Some(3), scores(&[0.5, 0.5]), 1), &t, &scores(&[0.5, 0.5])).is_err());
}

#[test]
fn targeted_examples() {
    let t = AttackedText::new("x");
    let g = TargetedClassification { target_class: 1 };
    let c = ctx(Some(0), scores(&[0.8, 0.2]), 1);
    assert_eq!(g.score(&c, &t, &scores(&[0.2, 0.8])).unwrap(), (0.8, GoalStatus::Succeeded));
    assert_eq!(g.score(&c, &t, &scores(&[0.8, 0.2])).unwrap(), (0.2, GoalStatus::Searching));
    assert!(g.validate(&ctx(Some(1), scores(&[0.2, 0.8]), 1)).is_err());
    assert!(g.validate(&c).is_ok());
}

#[test]
fn input_reduction_examples() {
    let g = InputReduction;
    let full = AttackedText::new("a b c d");
    let c = ctx(Some(0), scores(&[0.7, 0.3]), 4);
    assert_eq!(g.score(&c, &full, &scores(&[0.7, 0.3])).unwrap(), (0.0, GoalStatus::Maximizing));
    let half = full.delete_word_at(0).unwrap().delete_word_at(0).unwrap();
    assert_eq!(g.score(&c, &half, &scores(&[0.6, 0.4])).unwrap(), (0.5, GoalStatus::Maximizing));
    assert_eq!(g.score(&c, &half, &scores(&[0.4, 0.6])).unwrap(), (0.0, GoalStatus::Searching));
    assert!(g.maximizable());
}

#[test]
fn output_overlap_examples() {
    let g = NonOverlappingOutput;
    let t = AttackedText::new("x");
    let c = ctx(None, text("a b"), 1);
    assert_eq!(g.score(&c, &t, &text("a b")).unwrap(), (0.0, GoalStatus::Searching));
    assert_eq!(g.score(&c, &t, &text("c d")).unwrap(), (1.0, GoalStatus::Succeeded));
    assert_eq!(g.score(&c, &t, &text("A c")).unwrap(), (0.5, GoalStatus::Searching));
}

#[test]
fn bleu_goal_examples() {
    let g = MinimizeBleu::default();
    let t = AttackedText::new("x");
    let c = ctx(None, text("the cat sat on the mat"), 1);
    assert_eq!(g.score(&c, &t, &text("the cat sat on the mat")).unwrap(), (0.0, GoalStatus::Searching));
    assert_eq!(g.score(&c, &t, &text("")).unwrap(), (1.0, GoalStatus::Succeeded));
    let (s, st) = g.score(&c, &t, &text("the cat is on the mat")).unwrap();
    assert!((s - (1.0 - 0.4204482076268573)).abs() < 1e-12);
    assert_eq!(st, GoalStatus::Searching);
}

fn instrumented_attack(cache: bool, deletion: bool) -> (Attack, Arc<CountingClassifier<advtext::model::LinearTextClassifier>>) {
    let res = Resources::bundled();
    let model = Arc::new(CountingClassifier::new(bundled::sentiment_classifier()));
    let (goal, transformation, search): (Arc<dyn GoalFunction>, Arc<dyn advtext::transform::Transformation>, Arc<dyn advtext::search::SearchMethod>) =
        if deletion {
            (Arc::new(InputReduction), Arc::new(WordDeletion), Arc::new(BeamSearch::new(3)))
        } else {
            (
                Arc::new(UntargetedClassification),
                Arc::new(WordSwapEmbedding {
                    embeddings: res.embeddings.clone(),
                    max_candidates: 10,
                }),
                Arc::new(GreedyWordSwapWir::new(WirMethod::Delete)),
            )
        };
    let attack = Attack::new(
        goal,
        vec![
            ConstraintItem::pre(RepeatModification),
            ConstraintItem::pre(StopwordModification {
                stopwords: res.stopwords.clone(),
            }),
        ],
        transformation,
        search,
        Victim::classifier(Arc::clone(&model)),
    )
    .unwrap()
    .with_cache(cache);
    (attack, model)
}

#[test]
fn query_count_equals_victim_calls_without_cache() {
    for deletion in [false, true] {
        let (attack, model) = instrumented_attack(false, deletion);
        for e in Dataset::bundled_sentiment_test().truncated(10).examples {
            model.reset();
            let r = attack.attack(&e, 0, 0).unwrap();
            assert_eq!(r.num_queries, model.calls());
        }
    }
}

#[test]
fn cache_counts_every_real_victim_call() {
    let (attack, model) = instrumented_attack(true, false);
    let data = Dataset::bundled_sentiment_test().truncated(10).examples;
    let (results, _) = attack.attack_dataset(&data, 0).unwrap();
    assert_eq!(attack.cache_stats().victim_calls, model.calls());
    let logical: usize = results.iter().map(|r| r.num_queries).sum();
    assert!(logical >= model.calls());
}

#[test]
fn misclassified_examples_are_skipped() {
    let (attack, model) = instrumented_attack(false, false);
    let probe = "an awful dull mess";
    let predicted = advtext::model::argmax(&bundled::sentiment_classifier().predict_one(probe));
    let wrong = Example::text(probe, 1 - predicted);
    model.reset();
    let r = attack.attack(&wrong, 0, 0).unwrap();
    assert_eq!(r.status, AttackStatus::Skipped);
    assert_eq!(r.num_queries, 1);
}

proptest! {
    #[test]
    fn scores_stay_in_the_unit_interval(raw in prop::collection::vec(0.0f64..10.0, 2..6), truth_pick in 0usize..6, words in 1usize..8, kept in 0usize..8) {
        let total: f64 = raw.iter().sum::<f64>() + 1e-9;
        let p: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let truth = truth_pick % p.len();
        let target = (truth + 1) % p.len();
        let t = AttackedText::new(&vec!["w"; kept.min(words)].join(" "));
        let c = ctx(Some(truth), scores(&p), words);
        let goals: Vec<Box<dyn GoalFunction>> = vec![
            Box::new(UntargetedClassification),
            Box::new(TargetedClassification { target_class: target }),
            Box::new(InputReduction),
        ];
        for g in goals {
            let (s, _) = g.score(&c, &t, &scores(&p)).unwrap();
            prop_assert!((0.0..=1.0).contains(&s));
        }
    }

    #[test]
    fn text_goal_scores_stay_in_the_unit_interval(a in "[a-c ]{0,20}", b in "[a-c ]{0,20}") {
        let t = AttackedText::new("x");
        let c = ctx(None, text(&a), 1);
        for g in [&NonOverlappingOutput as &dyn GoalFunction, &MinimizeBleu::default()] {
            let (s, _) = g.score(&c, &t, &text(&b)).unwrap();
            prop_assert!((0.0..=1.0).contains(&s));
        }
    }

    #[test]
    fn untargeted_success_survives_monotone_rescaling(raw in prop::collection::vec(0.01f64..10.0, 2..6), truth_pick in 0usize..6, power in 0.2f64..5.0) {
        let norm = |v: &[f64]| { let s: f64 = v.iter().sum(); v.iter().map(|x| x / s).collect::<Vec<_>>() };
        let p = norm(&raw);
        let q = norm(&p.iter().map(|x| x.powf(power)).collect::<Vec<_>>());
        prop_assume!(advtext::model::argmax(&p) == advtext::model::argmax(&q));
        let truth = truth_pick % p.len();
        let t = AttackedText::new("x");
        let c = ctx(Some(truth), scores(&p), 1);
        let g = UntargetedClassification;
        prop_assert_eq!(g.score(&c, &t, &scores(&p)).unwrap().1, g.score(&c, &t, &scores(&q)).unwrap().1);
    }

    #[test]
    fn reduction_score_rises_only_with_fewer_words(n0 in 1usize..12, a in 0usize..12, b in 0usize..12) {
        let (a, b) = (a.min(n0), b.min(n0));
        let g = InputReduction;
        let c = ctx(Some(0), scores(&[0.7, 0.3]), n0);
        let sa = g.score(&c, &AttackedText::new(&vec!["w"; a].join(" ")), &scores(&[0.7, 0.3])).unwrap().0;
        let sb = g.score(&c, &AttackedText::new(&vec!["w"; b].join(" ")), &scores(&[0.7, 0.3])).unwrap().0;
        prop_assert_eq!(sb > sa, b < a);
    }
}
