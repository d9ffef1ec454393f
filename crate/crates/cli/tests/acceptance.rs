//! Acceptance gate. Prints one PASS or FAIL line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use advtext::attack::{build_recipe, recipe_names, AttackStatus};
use advtext::augment::Augmenter;
use advtext::dataset::{Dataset, Example};
use advtext::metrics::{bleu, chrf, levenshtein};
use advtext::model::{bundled, fit, CountingClassifier, FeatureConfig, LinearTextClassifier, TrainConfig, Victim, WhiteBoxClassifier};
use advtext::resources::Resources;
use advtext::search::{BeamSearch, GreedyWordSwapWir, SearchMethod, WirMethod};
use advtext::text::AttackedText;
use advtext::training::{recipe_factory, train, TrainingPlan};
use common::{dp_levenshtein, ToyInstance, METRIC_FIXTURES};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, detail: impl Into<String>) -> Outcome {
    if cond {
        Ok(detail.into())
    } else {
        Err(detail.into())
    }
}

fn within(elapsed: Duration, limit: Duration, detail: String) -> Outcome {
    if elapsed > limit {
        Err(format!("{detail}; took {elapsed:.1?}, limit {limit:?}"))
    } else {
        Ok(detail)
    }
}

fn victim_for(recipe: &str) -> Victim {
    if matches!(recipe, "morpheus" | "seq2sick") {
        Victim::text_to_text(bundled::translator())
    } else {
        Victim::classifier(bundled::sentiment_classifier())
    }
}

fn data_for(recipe: &str, n: usize) -> Vec<Example> {
    if matches!(recipe, "morpheus" | "seq2sick") {
        Dataset::bundled_translation().truncated(n).examples
    } else {
        Dataset::bundled_sentiment_test().truncated(n).examples
    }
}

// 1
fn recipe_fidelity() -> Outcome {
    let started = Instant::now();
    let res = Resources::bundled();
    let expected: &[(&str, &[&str])] = &[
        ("alzantot-lite", &["(pop_size):  60", "(max_iters):  20", "(temp):  0.3", "(max_candidates):  8", "(max_percent):  0.2", "(max_mse_dist):  0.5"]),
        ("deepwordbug", &["(wir_method):  unk", "(max_edit_distance):  30", "(random_one):  True"]),
        ("fast-alzantot-lite", &["(pop_size):  60", "(max_iters):  20", "(temp):  0.3", "(max_candidates):  8", "(max_percent):  0.2", "(max_mse_dist):  0.5"]),
        ("hotflip", &["(beam_width):  10", "(top_n):  1", "(max_num_words):  2", "(min_cos_sim):  0.8"]),
        ("iga-lite", &["(pop_size):  60", "(max_iters):  20", "(max_candidates):  50", "(max_percent):  0.2", "(max_mse_dist):  0.5"]),
        ("input-reduction", &["(wir_method):  delete", "(maximizable):  True"]),
        ("kuleshov-lite", &["(max_candidates):  15", "(max_percent):  0.5", "(threshold):  -0.2"]),
        ("morpheus", &["(target_bleu):  0.0", "(maximizable):  False"]),
        ("pruthi", &["(max_num_words):  1", "(random_one):  False"]),
        ("pso", &["(max_candidates):  -1"]),
        ("pwws", &["(wir_method):  pwws"]),
        ("seq2sick", &["(wir_method):  unk", "(max_candidates):  50", "(max_edit_distance):  30"]),
        ("textbugger-lite", &["(wir_method):  unk", "(max_candidates):  5"]),
        ("textfooler-lite", &["(wir_method):  delete", "(max_candidates):  50", "(min_cos_sim):  0.5"]),
    ];
    let names: BTreeSet<&str> = expected.iter().map(|(n, _)| *n).collect();
    if names != recipe_names().iter().copied().collect() {
        return Err("recipe table does not match the recipe list".into());
    }
    let mut problems = Vec::new();
    let mut checked = 0;
    for (name, needles) in expected {
        let dump = match build_recipe(name, &res, victim_for(name)) {
            Ok(a) => a.prototype(),
            Err(e) => {
                problems.push(format!("{name}: {e}"));
                continue;
            }
        };
        let lines: BTreeSet<&str> = dump.lines().map(str::trim).collect();
        for needle in needles.iter() {
            checked += 1;
            if !lines.contains(needle) {
                problems.push(format!("{name} lacks `{needle}`"));
            }
        }
        let flag = if *name == "hotflip" { "(is_black_box):  False" } else { "(is_black_box):  True" };
        checked += 1;
        if !lines.contains(flag) {
            problems.push(format!("{name} lacks `{flag}`"));
        }
    }
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }
    within(
        started.elapsed(),
        Duration::from_secs(1),
        format!("{checked} parameter lines across {} recipes (max_percent 0.4 occurs only in an unbuildable recipe)", expected.len()),
    )
}

// 2
fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let mut violations = Vec::new();
    let mut oracle_successes = 0;
    for seed in 0..50u64 {
        let inst = ToyInstance::random(1000 + seed, 8, 3);
        let oracle = inst.oracle_success();
        oracle_successes += usize::from(oracle);
        let example = Example::text(inst.text(), inst.label);
        let beam = inst.attack(Arc::new(BeamSearch::new(inst.space_size())));
        match beam.attack(&example, seed, 0) {
            Ok(r) if (r.status == AttackStatus::Successful) == oracle => {}
            Ok(r) => violations.push(format!("instance {seed}: beam {:?}, oracle {oracle}", r.status)),
            Err(e) => violations.push(format!("instance {seed}: {e}")),
        }
        let mut others: Vec<(String, Arc<dyn SearchMethod>)> = vec![("greedy".into(), Arc::new(BeamSearch::greedy()))];
        for m in [WirMethod::Unk, WirMethod::Delete, WirMethod::Pwws, WirMethod::Gradient, WirMethod::Random] {
            others.push((format!("wir-{m:?}"), Arc::new(GreedyWordSwapWir::new(m))));
        }
        for (label, search) in others {
            match inst.attack(search).attack(&example, seed, 0) {
                Ok(r) if r.status == AttackStatus::Successful && !oracle => {
                    violations.push(format!("instance {seed}: {label} succeeded where the oracle did not"))
                }
                Ok(r) if !inst.reachable(&r.perturbed.printable()) => {
                    violations.push(format!("instance {seed}: {label} returned an unreachable text"))
                }
                Ok(_) => {}
                Err(e) => violations.push(format!("instance {seed}: {label}: {e}")),
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations.join("; "));
    }
    within(
        started.elapsed(),
        Duration::from_secs(60),
        format!("50 instances, {oracle_successes} solvable, zero violations"),
    )
}

// 3
fn cache_transparency() -> Outcome {
    let started = Instant::now();
    let res = Resources::bundled();
    for name in recipe_names() {
        let data = data_for(name, 5);
        let run = |cache: bool| {
            build_recipe(name, &res, victim_for(name))
                .and_then(|a| a.with_cache(cache).attack_dataset(&data, 17))
                .map_err(|e| format!("{name}: {e}"))
        };
        let (a, _) = run(true)?;
        let (b, _) = run(false)?;
        if a != b {
            return Err(format!("{name}: results differ with the cache on"));
        }
    }
    let data = Dataset::bundled_sentiment_test().truncated(3).examples;
    let mut calls = [0usize; 2];
    let mut hit_rate = 0.0;
    for (slot, cache) in [(0, true), (1, false)] {
        let model = Arc::new(CountingClassifier::new(bundled::sentiment_classifier()));
        let attack = build_recipe("alzantot-lite", &res, Victim::classifier(Arc::clone(&model)))
            .map_err(|e| e.to_string())?
            .with_cache(cache);
        attack.attack_dataset(&data, 5).map_err(|e| e.to_string())?;
        calls[slot] = model.calls();
        if cache {
            hit_rate = attack.cache_stats().output_hit_rate();
        }
    }
    let detail = format!(
        "{} recipes identical; genetic algorithm victim calls {} with cache vs {} without, hit rate {:.1}%",
        recipe_names().len(),
        calls[0],
        calls[1],
        100.0 * hit_rate
    );
    check(calls[0] < calls[1] && hit_rate > 0.5, detail.clone())?;
    within(started.elapsed(), Duration::from_secs(120), detail)
}

fn random_string(rng: &mut ChaCha8Rng) -> String {
    let len = rng.gen_range(0..12);
    (0..len).map(|_| ['a', 'b', 'c', 'd', ' ', 'é'][rng.gen_range(0..6)]).collect()
}

// 4
fn metric_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..1000 {
        let (a, b) = (random_string(&mut rng), random_string(&mut rng));
        if levenshtein(&a, &b) != dp_levenshtein(&a, &b) {
            return Err(format!("pair {i}: `{a}` vs `{b}`"));
        }
    }
    for (h, r, b, c) in METRIC_FIXTURES {
        if (bleu(h, r) - b).abs() > 1e-9 || (chrf(h, r) - c).abs() > 1e-9 {
            return Err(format!("fixture `{h}` / `{r}`: bleu {} chrf {}", bleu(h, r), chrf(h, r)));
        }
    }
    for i in 0..10_000 {
        let (a, b, c) = (random_string(&mut rng), random_string(&mut rng), random_string(&mut rng));
        let (ab, bc, ac) = (levenshtein(&a, &b), levenshtein(&b, &c), levenshtein(&a, &c));
        if ab != levenshtein(&b, &a) || levenshtein(&a, &a) != 0 || ac > ab + bc || (ab == 0) != (a == b) {
            return Err(format!("axiom violated on triple {i}"));
        }
    }
    Ok(format!("1000 pairs exact, {} fixtures within 1e-9, 10000 triples satisfy the axioms", METRIC_FIXTURES.len()))
}

// 5
fn gradient_exactness() -> Outcome {
    let vocab: Vec<String> = (0..10).map(|i| format!("tok{i}")).collect();
    let mut exact_ties = 0;
    for case in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(case);
        let n_labels = rng.gen_range(2..5);
        let features = if case % 2 == 0 {
            FeatureConfig::bag_of_words()
        } else {
            FeatureConfig {
                ngram_range: (2, 4),
                hash_buckets: 16,
            }
        };
        let labels = (0..n_labels).map(|k| k.to_string()).collect();
        let mut m = LinearTextClassifier::new(labels, vocab.iter().map(String::as_str), features);
        for f in 0..m.feature_dim() {
            for k in 0..n_labels {
                m.set_weight(f, k, rng.gen_range(-2.0..2.0));
            }
        }
        let len = rng.gen_range(1..6);
        let text = (0..len).map(|_| vocab[rng.gen_range(0..vocab.len())].as_str()).collect::<Vec<_>>().join(" ");
        let t = AttackedText::new(&text);
        let index = rng.gen_range(0..t.num_words());
        let label = rng.gen_range(0..n_labels);
        let ranking = m.word_swap_ranking(&t, label, index);
        let base = m.attack_loss(&text, label);
        let mut brute: Vec<(String, f64)> = vocab
            .iter()
            .filter(|w| **w != t.words()[index])
            .map(|w| (w.clone(), m.attack_loss(&t.replace_word_at(index, w).unwrap().printable(), label) - base))
            .collect();
        brute.sort_by(|a, b| b.1.total_cmp(&a.1));
        if ranking.len() != brute.len() {
            return Err(format!("case {case}: {} ranked vs {} candidates", ranking.len(), brute.len()));
        }
        for (pos, ((rw, _), (bw, bd))) in ranking.iter().zip(&brute).enumerate() {
            if rw == bw {
                continue;
            }
            let rd = brute.iter().find(|(w, _)| w == rw).map(|(_, d)| *d).unwrap_or(f64::NAN);
            if (rd - bd).abs() > 1e-12 {
                return Err(format!("case {case}: position {pos} is {rw} but brute force gives {bw}"));
            }
            exact_ties += 1;
        }
    }
    Ok(format!("100 cases match brute-force order ({exact_ties} positions differ only between equal deltas)"))
}

fn per_class_sample(pool: &[Example], per_class: usize, seed: u64) -> Vec<Example> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for label in [0, 1] {
        let mut class: Vec<&Example> = pool.iter().filter(|e| e.label == Some(label)).collect();
        class.shuffle(&mut rng);
        out.extend(class.into_iter().take(per_class).cloned());
    }
    out
}

fn pairs(examples: &[Example]) -> Vec<(String, usize)> {
    examples.iter().map(|e| (e.joined_text(), e.label.expect("labelled"))).collect()
}

fn labels() -> Vec<String> {
    vec!["0".into(), "1".into()]
}

// 6
fn augmentation_direction() -> Outcome {
    let started = Instant::now();
    let res = Resources::bundled();
    let pool = Dataset::bundled_sentiment_train().examples;
    let test = pairs(&Dataset::bundled_sentiment_test().examples);
    let augmenter = Augmenter::recipe("embedding", &res, 0.1, 4).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut ok = true;
    for (k, per_class) in [10usize, 20, 50].into_iter().enumerate() {
        let (mut plain, mut augmented) = (0.0, 0.0);
        for seed in 0..5u64 {
            let sample = per_class_sample(&pool, per_class, seed);
            let config = TrainConfig {
                seed,
                ..bundled::sentiment_config()
            };
            let (m, _) = fit(&pairs(&sample), None, labels(), &config).map_err(|e| e.to_string())?;
            plain += m.accuracy(&test) / 5.0;
            let expanded = augmenter.augment_dataset(&sample, seed, false).map_err(|e| e.to_string())?;
            let (m, _) = fit(&pairs(&expanded), None, labels(), &config).map_err(|e| e.to_string())?;
            augmented += m.accuracy(&test) / 5.0;
        }
        if k < 2 && augmented < plain {
            ok = false;
        }
        rows.push(format!("{per_class}/class {:.1}% -> {:.1}%", 100.0 * plain, 100.0 * augmented));
    }
    let detail = format!("mean test accuracy without -> with augmentation: {}", rows.join(", "));
    check(ok, detail.clone())?;
    within(started.elapsed(), Duration::from_secs(300), detail)
}

// 7
fn adversarial_training_direction() -> Outcome {
    let started = Instant::now();
    let res = Resources::bundled();
    let train_set = Dataset::bundled_sentiment_train().examples;
    let eval_set = Dataset::bundled_sentiment_test().examples;
    let eval_pairs = pairs(&eval_set);
    let under_attack = |m: &LinearTextClassifier, seed: u64| -> Result<f64, String> {
        let attack = build_recipe("deepwordbug", &res, Victim::classifier(m.clone())).map_err(|e| e.to_string())?;
        Ok(attack.attack_dataset(&eval_set, seed).map_err(|e| e.to_string())?.1.accuracy_under_attack)
    };
    let mut wins = 0;
    let mut worst_gap: f64 = 0.0;
    let mut rows = Vec::new();
    for seed in 0..5u64 {
        let config = TrainConfig {
            epochs: 12,
            seed,
            ..bundled::sentiment_config()
        };
        let baseline = train(&TrainingPlan::new(config.clone(), labels()), &train_set, None).map_err(|e| e.to_string())?;
        let mut plan = TrainingPlan::new(config, labels());
        plan.num_clean_epochs = 4;
        plan.attack_period = 4;
        plan.attack = Some(recipe_factory("deepwordbug", res.clone()));
        let adversarial = train(&plan, &train_set, None).map_err(|e| e.to_string())?;
        let (b_att, a_att) = (under_attack(&baseline.model, seed)?, under_attack(&adversarial.model, seed)?);
        let (b_clean, a_clean) = (baseline.model.accuracy(&eval_pairs), adversarial.model.accuracy(&eval_pairs));
        wins += usize::from(a_att > b_att);
        worst_gap = worst_gap.max(b_clean - a_clean);
        rows.push(format!("{:.1}->{:.1}", 100.0 * b_att, 100.0 * a_att));
    }
    let detail = format!(
        "accuracy under attack baseline->adversarial per seed [{}]; {wins}/5 wins; largest clean accuracy drop {:.1} points",
        rows.join(", "),
        100.0 * worst_gap
    );
    check(wins >= 4 && worst_gap <= 0.10, detail.clone())?;
    within(started.elapsed(), Duration::from_secs(600), detail)
}

// 8
fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for name in recipe_names() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{name}-{run}.csv"));
            let status = Command::new(env!("CARGO_BIN_EXE_advtext"))
                .args(["attack", "--recipe", name, "--num-examples", "8", "--seed", "21", "--quiet", "--log-to"])
                .arg(format!("csv={}", path.display()))
                .env_remove("ADVTEXT_RESOURCES")
                .output()
                .map_err(|e| e.to_string())?;
            if !status.status.success() {
                return Err(format!("{name}: exit {:?}: {}", status.status.code(), String::from_utf8_lossy(&status.stderr)));
            }
            outputs.push(fs::read(&path).map_err(|e| e.to_string())?);
        }
        if outputs[0] != outputs[1] {
            return Err(format!("{name}: CSV output differs between runs"));
        }
    }
    Ok(format!("{} recipes byte-identical across repeated runs", recipe_names().len()))
}

/// Invariant bullets, each with the property tests that encode it.
const INVARIANTS: &[(&str, &str, &[&str])] = &[
    ("text-core: round trip", "text_core", &["segmentation_round_trips"]),
    ("text-core: edit locality", "text_core", &["replacement_is_local"]),
    ("text-core: immutability", "text_core", &["edits_never_change_the_source"]),
    ("text-core: modified cardinality", "text_core", &["distinct_replacements_count_exactly"]),
    ("lexical-resources: neighbor exclusion and order", "lexical_resources", &["neighbor_lists_exclude_the_query_and_descend"]),
    ("lexical-resources: cosine identity and symmetry", "lexical_resources", &["cosine_is_symmetric_and_self_similar"]),
    ("lexical-resources: lexicon dump round trip", "lexical_resources", &["lexicon_dump_round_trips"]),
    ("victim-models: first-order swap scores exact", "victim_models", &["first_order_swap_scores_are_exact"]),
    ("victim-models: softmax normalization", "victim_models", &["probabilities_are_normalized"]),
    ("victim-models: save/load bit identity", "victim_models", &["save_and_load_predict_identically"]),
    ("goal-functions: scores in [0, 1]", "goal_functions", &["scores_stay_in_the_unit_interval", "text_goal_scores_stay_in_the_unit_interval"]),
    ("goal-functions: monotone rescaling", "goal_functions", &["untargeted_success_survives_monotone_rescaling"]),
    ("goal-functions: input reduction monotonicity", "goal_functions", &["reduction_score_rises_only_with_fewer_words"]),
    ("goal-functions: query counter", "goal_functions", &["query_count_equals_victim_calls_without_cache"]),
    ("constraints: Levenshtein axioms", "constraints", &["levenshtein_axioms"]),
    ("constraints: bound monotonicity", "constraints", &["loosening_a_bound_never_rejects_more"]),
    ("constraints: pre-filters commute", "constraints", &["pre_filters_commute"]),
    ("constraints: first-step reference agreement", "constraints", &["previous_and_original_references_agree_on_the_first_step"]),
    ("transformations: allowed indices only", "transformations", &["only_allowed_indices_change"]),
    ("transformations: reconstruction invariants", "transformations", &["only_allowed_indices_change"]),
    ("transformations: seed reproducibility", "transformations", &["fixed_seed_reproduces_and_exhaustive_edits_ignore_the_seed"]),
    ("transformations: composite union", "transformations", &["composite_is_the_ordered_union"]),
    ("search-methods: query budget", "search_methods", &["every_method_respects_the_query_budget"]),
    ("search-methods: constraint-passing results", "search_methods", &["returned_texts_pass_every_constraint"]),
    ("search-methods: determinism", "search_methods", &["fixed_seed_gives_identical_results"]),
    ("search-methods: score monotonicity", "search_methods", &["greedy_and_beam_never_lower_the_score"]),
    ("attack-engine: cache transparency", "attack_engine", &["caching_never_changes_an_outcome"]),
    ("attack-engine: cache effectiveness", "attack_engine", &["cache_saves_genetic_algorithm_calls"]),
    ("attack-engine: instrumented query count", "attack_engine", &["reported_queries_match_the_instrumented_victim"]),
    ("augmentation: outputs pass constraints", "augmentation", &["outputs_pass_the_augmenter_constraints"]),
    ("augmentation: exclude original", "augmentation", &["exclude_original_drops_exact_copies"]),
    ("augmentation: labels preserved", "augmentation", &["dataset_expansion_keeps_labels_and_order", "exclude_original_drops_exact_copies"]),
    ("training: adversarial labels", "training", &["adversarial_sets_never_change_labels"]),
    ("training: regeneration count", "training", &["regeneration_count_follows_the_schedule"]),
    ("training: no attack equals plain training", "training", &["without_attack_or_augmentation_training_is_fit"]),
    ("cli: identical stream to every writer", "report", &["every_format_sees_every_result"]),
    ("cli: seeded runs are byte-identical", "cli", &["same_seed_gives_identical_csv"]),
];

/// The most recently built test binary for target `name`.
fn test_binary(name: &str) -> Option<PathBuf> {
    let deps = std::env::current_exe().ok()?.parent()?.to_path_buf();
    let prefix = format!("{name}-");
    fs::read_dir(&deps)
        .ok()?
        .filter_map(Result::ok)
        .filter(|e| {
            let f = e.file_name().to_string_lossy().into_owned();
            f.strip_prefix(&prefix)
                .is_some_and(|h| h.len() == 16 && h.chars().all(|c| c.is_ascii_hexdigit()))
        })
        .filter_map(|e| Some((e.metadata().ok()?.modified().ok()?, e.path())))
        .max()
        .map(|(_, p)| p)
}

fn run_named_test(binary: &Path, test: &str) -> Result<(), String> {
    let out = Command::new(binary)
        .args(["--exact", test, "--test-threads", "1"])
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("../core"))
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    if out.status.success() && stdout.contains("test result: ok. 1 passed") {
        Ok(())
    } else {
        Err(format!("{test} did not pass"))
    }
}

// 9
fn invariant_suites() -> Outcome {
    let mut failures = Vec::new();
    let mut tests_run = BTreeSet::new();
    for (bullet, target, tests) in INVARIANTS {
        let Some(binary) = test_binary(target) else {
            failures.push(format!("{bullet}: test target `{target}` is not built (run `cargo test --workspace`)"));
            continue;
        };
        for test in tests.iter() {
            if !tests_run.insert((*target, *test)) {
                continue;
            }
            if let Err(e) = run_named_test(&binary, test) {
                failures.push(format!("{bullet}: {e}"));
            }
        }
    }
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    Ok(format!("{} invariants covered by {} named tests, all green", INVARIANTS.len(), tests_run.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("recipe fidelity", recipe_fidelity),
        ("oracle equivalence", oracle_equivalence),
        ("cache transparency and effectiveness", cache_transparency),
        ("metric oracles", metric_oracles),
        ("gradient exactness", gradient_exactness),
        ("augmentation direction", augmentation_direction),
        ("adversarial training direction", adversarial_training_direction),
        ("determinism", cli_determinism),
        ("invariant suites", invariant_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
