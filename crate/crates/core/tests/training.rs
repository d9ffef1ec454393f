use std::collections::BTreeSet;
use std::sync::Arc;

use advtext::attack::{build_recipe, Attack, AttackStatus};
use advtext::augment::Augmenter;
use advtext::constraints::{ConstraintItem, RepeatModification};
use advtext::dataset::{Dataset, Example};
use advtext::goal::UntargetedClassification;
use advtext::model::{bundled, fit, TrainConfig, Victim};
use advtext::resources::{LexiconKind, Resources, SynonymLexicon};
use advtext::search::GreedyWordSwapWir;
use advtext::search::WirMethod;
use advtext::training::{adversarial_set, recipe_factory, train, AttackFactory, TrainingPlan};
use advtext::transform::LexiconSwap;
use proptest::prelude::*;

fn labels() -> Vec<String> {
    vec!["negative".into(), "positive".into()]
}

fn small_train(n: usize) -> Vec<Example> {
    Dataset::bundled_sentiment_train().truncated(n).examples
}

fn small_dev(n: usize) -> Vec<Example> {
    Dataset::bundled_sentiment_test().truncated(n).examples
}

fn config(epochs: usize) -> TrainConfig {
    TrainConfig {
        epochs,
        learning_rate: 0.5,
        batch_size: 8,
        seed: 3,
        ..TrainConfig::default()
    }
}

fn pairs(examples: &[Example]) -> Vec<(String, usize)> {
    examples.iter().map(|e| (e.joined_text(), e.label.unwrap())).collect()
}

/// An attack whose transformation never proposes anything.
fn hopeless(victim: Victim) -> advtext::Result<Attack> {
    Attack::new(
        Arc::new(UntargetedClassification),
        vec![ConstraintItem::pre(RepeatModification)],
        Arc::new(LexiconSwap::wordnet(Arc::new(SynonymLexicon::new(LexiconKind::Thesaurus)))),
        Arc::new(GreedyWordSwapWir::new(WirMethod::Delete)),
        victim,
    )
}

#[test]
fn without_attack_or_augmentation_training_is_fit() {
    let data = small_train(60);
    let dev = small_dev(20);
    let cfg = config(6);
    let report = train(&TrainingPlan::new(cfg.clone(), labels()), &data, Some(&dev)).unwrap();
    let (model, history) = fit(&pairs(&data), Some(&pairs(&dev)), labels(), &cfg).unwrap();
    assert_eq!(report.model, model);
    assert_eq!(report.regenerations, 0);
    assert_eq!(report.history.len(), history.len());
    for (a, b) in report.history.iter().zip(&history) {
        assert_eq!(a.train_loss.to_bits(), b.train_loss.to_bits());
        assert_eq!(a.train_accuracy.to_bits(), b.train_accuracy.to_bits());
        assert_eq!(a.dev_accuracy.map(f64::to_bits), b.dev_accuracy.map(f64::to_bits));
        assert_eq!(a.adversarial_examples, None);
    }
}

#[test]
fn zero_epochs_leave_the_model_untrained() {
    let report = train(&TrainingPlan::new(config(0), labels()), &small_train(10), None).unwrap();
    assert!(report.history.is_empty());
    assert_eq!(report.model.predict_one("anything at all"), [0.5, 0.5]);
}

#[test]
fn fixed_seed_gives_identical_history() {
    let data = small_train(30);
    let mut plan = TrainingPlan::new(config(3), labels());
    plan.num_clean_epochs = 1;
    plan.attack_period = 1;
    plan.attack = Some(recipe_factory("deepwordbug", Resources::bundled()));
    let a = train(&plan, &data, Some(&small_dev(10))).unwrap();
    let b = train(&plan, &data, Some(&small_dev(10))).unwrap();
    assert_eq!(a.history, b.history);
    assert_eq!(a.model, b.model);
    assert_eq!(a.regenerations, 2);
    let rebuilt: Vec<usize> = a.history.iter().filter(|r| r.adversarial_examples.is_some()).map(|r| r.epoch).collect();
    assert_eq!(rebuilt, [2, 3]);
    assert!(a.evaluation.unwrap().accuracy_under_attack.is_some());
}

#[test]
fn one_period_covering_the_attack_phase_regenerates_once() {
    let mut plan = TrainingPlan::new(config(5), labels());
    plan.num_clean_epochs = 2;
    plan.attack_period = 3;
    plan.attack = Some(recipe_factory("deepwordbug", Resources::bundled()));
    assert_eq!(train(&plan, &small_train(20), None).unwrap().regenerations, 1);
}

#[test]
fn adversarial_labels_match_the_originals() {
    let res = Resources::bundled();
    let data = small_dev(20);
    let attack = build_recipe("deepwordbug", &res, Victim::classifier(bundled::sentiment_classifier())).unwrap();
    let (results, _) = attack.attack_dataset(&data, 9).unwrap();
    let (adv, replaced) = adversarial_set(&attack, &data, 9).unwrap();
    assert_eq!(adv.len(), data.len());
    assert_eq!(replaced, results.iter().filter(|r| r.status == AttackStatus::Successful).count());
    assert!(replaced > 0);
    for ((a, d), r) in adv.iter().zip(&data).zip(&results) {
        assert_eq!(a.label, d.label);
        if r.status == AttackStatus::Successful {
            assert_eq!(a.joined_text(), r.perturbed.printable());
        } else {
            assert_eq!(a, d);
        }
    }
}

#[test]
fn failed_attacks_keep_the_clean_example() {
    let data = small_dev(15);
    let attack = hopeless(Victim::classifier(bundled::sentiment_classifier())).unwrap();
    let (adv, replaced) = adversarial_set(&attack, &data, 0).unwrap();
    assert_eq!(replaced, 0);
    assert_eq!(adv, data);
}

#[test]
fn augmentation_expands_the_set_before_training() {
    let res = Resources::bundled();
    let data = small_train(20);
    let k = 2;
    let augmenter = Augmenter::recipe("eda", &res, 0.2, k).unwrap();
    let expanded = augmenter.augment_dataset(&data, 3, false).unwrap();
    assert_eq!(expanded.len(), data.len() * (1 + k));
    let mut plan = TrainingPlan::new(config(4), labels());
    plan.augmenter = Some(augmenter);
    let report = train(&plan, &data, None).unwrap();
    let (model, _) = fit(&pairs(&expanded), None, labels(), &config(4)).unwrap();
    assert_eq!(report.model, model);
}

#[test]
fn incompatible_attacks_fail_before_training() {
    let res = Resources::bundled();
    let factory: AttackFactory = Arc::new(move |victim| build_recipe("seq2sick", &res, victim));
    let mut plan = TrainingPlan::new(config(3), labels());
    plan.attack = Some(factory);
    assert!(train(&plan, &small_train(10), None).is_err());
}

#[test]
fn bad_schedules_are_rejected() {
    let mut plan = TrainingPlan::new(config(3), labels());
    plan.num_clean_epochs = 4;
    assert!(train(&plan, &small_train(10), None).is_err());
    plan.num_clean_epochs = 0;
    plan.attack_period = 0;
    assert!(train(&plan, &small_train(10), None).is_err());
    assert!(train(&TrainingPlan::new(config(3), labels()), &[], None).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn regeneration_count_follows_the_schedule(epochs in 0usize..40, clean_pick in 0usize..40, period in 1usize..12) {
        let clean = clean_pick.min(epochs);
        let mut plan = TrainingPlan::new(config(epochs), labels());
        plan.num_clean_epochs = clean;
        plan.attack_period = period;
        plan.attack = Some(Arc::new(hopeless));
        let at: BTreeSet<usize> = (1..=epochs).filter(|&e| plan.regenerates_at(e)).collect();
        let expected = (epochs as i64 - clean as i64 - 1).div_euclid(period as i64) + 1;
        prop_assert_eq!(at.len() as i64, expected);
        prop_assert!(at.iter().all(|&e| e > clean));
        if epochs > clean {
            prop_assert!(at.contains(&(clean + 1)));
        }
    }

    #[test]
    fn adversarial_sets_never_change_labels(n in 1usize..12, seed in any::<u64>()) {
        let res = Resources::bundled();
        let data = small_dev(n);
        let attack = build_recipe("pruthi", &res, Victim::classifier(bundled::sentiment_classifier())).unwrap();
        let (adv, _) = adversarial_set(&attack, &data, seed).unwrap();
        prop_assert_eq!(adv.len(), data.len());
        for (a, d) in adv.iter().zip(&data) {
            prop_assert_eq!(a.label, d.label);
        }
    }
}

#[test]
fn short_real_run_trains_on_the_perturbed_set() {
    let mut plan = TrainingPlan::new(config(2), labels());
    plan.num_clean_epochs = 1;
    plan.attack_period = 5;
    plan.attack = Some(recipe_factory("deepwordbug", Resources::bundled()));
    let report = train(&plan, &small_train(20), None).unwrap();
    assert_eq!(report.regenerations, 1);
    assert!(report.history[1].adversarial_examples.is_some());
    assert!(report.evaluation.is_none());
}
