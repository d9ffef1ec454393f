//! Ready-made victims built from the bundled data.

use std::path::Path;
use std::sync::OnceLock;

use super::{fit, DictionaryTranslator, LinearTextClassifier, TrainConfig};
use crate::dataset::Dataset;
use crate::resources::bundled;

pub const SENTIMENT_ID: &str = "bundled-sentiment";
pub const TRANSLATOR_ID: &str = "bundled-translator";

/// Settings the bundled sentiment classifier is trained with.
pub fn sentiment_config() -> TrainConfig {
    TrainConfig {
        epochs: 10,
        learning_rate: 0.5,
        batch_size: 32,
        seed: 0,
        ..TrainConfig::default()
    }
}

/// Linear sentiment classifier trained on the bundled training split.
/// Training runs once per process.
pub fn sentiment_classifier() -> LinearTextClassifier {
    static MODEL: OnceLock<LinearTextClassifier> = OnceLock::new();
    MODEL
        .get_or_init(|| {
            let train = Dataset::bundled_sentiment_train()
                .labeled()
                .expect("bundled corpus is labelled");
            let (model, _) = fit(&train, None, vec!["0".into(), "1".into()], &sentiment_config())
                .expect("bundled corpus trains");
            model.with_id(SENTIMENT_ID)
        })
        .clone()
}

/// Word-by-word English to French translator over the bundled dictionary.
pub fn translator() -> DictionaryTranslator {
    DictionaryTranslator::parse(bundled::TRANSLATION_DICT, Path::new("<bundled>"))
        .expect("bundled dictionary parses")
        .with_id(TRANSLATOR_ID)
}
