//! File-backed lexical data shared read-only by every attack component.

mod charmaps;
mod embedding;
mod lexicon;

pub use charmaps::CharMaps;
pub use embedding::{EmbeddingStore, DEFAULT_NEIGHBORS};
pub use lexicon::{InflectionTable, LexiconKind, StopwordSet, SynonymLexicon};

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::text::PosLexicon;

/// Raw contents of the resources compiled into the library.
pub mod bundled {
    pub const EMBEDDINGS: &str = include_str!("../../data/embeddings.txt");
    pub const THESAURUS: &str = include_str!("../../data/thesaurus.tsv");
    pub const SEMEMES: &str = include_str!("../../data/sememe.tsv");
    pub const POS_LEXICON: &str = include_str!("../../data/pos_lexicon.tsv");
    pub const STOPWORDS: &str = include_str!("../../data/stopwords.txt");
    pub const INFLECTIONS: &str = include_str!("../../data/inflections.tsv");
    pub const SENTIMENT_TRAIN: &str = include_str!("../../data/sentiment_train.tsv");
    pub const SENTIMENT_TEST: &str = include_str!("../../data/sentiment_test.tsv");
    pub const TRANSLATION_DICT: &str = include_str!("../../data/translation_dict.tsv");
    pub const TRANSLATION: &str = include_str!("../../data/translation.tsv");

    /// Name the bundled counter-fitted-style embedding reports in prototypes.
    pub const EMBEDDING_NAME: &str = "paragramcf";
}

/// File names looked up by [`Resources::from_dir`].
pub const EMBEDDINGS_FILE: &str = "embeddings.txt";
pub const THESAURUS_FILE: &str = "thesaurus.tsv";
pub const SEMEMES_FILE: &str = "sememe.tsv";
pub const POS_FILE: &str = "pos_lexicon.tsv";
pub const STOPWORDS_FILE: &str = "stopwords.txt";
pub const INFLECTIONS_FILE: &str = "inflections.tsv";
pub const HOMOGLYPHS_FILE: &str = "homoglyphs.tsv";
pub const KEYBOARD_FILE: &str = "keyboard.tsv";

/// Everything a recipe may need, behind shared handles.
#[derive(Clone, Debug)]
pub struct Resources {
    pub embeddings: Arc<EmbeddingStore>,
    pub thesaurus: Arc<SynonymLexicon>,
    pub sememes: Arc<SynonymLexicon>,
    pub pos: Arc<PosLexicon>,
    pub stopwords: Arc<StopwordSet>,
    pub inflections: Arc<InflectionTable>,
    pub char_maps: Arc<CharMaps>,
}

impl Resources {
    pub fn bundled() -> Self {
        let origin = Path::new("<bundled>");
        Resources {
            embeddings: Arc::new(
                EmbeddingStore::parse(bundled::EMBEDDINGS, bundled::EMBEDDING_NAME, origin)
                    .expect("bundled embeddings parse"),
            ),
            thesaurus: Arc::new(
                SynonymLexicon::parse(LexiconKind::Thesaurus, bundled::THESAURUS, origin)
                    .expect("bundled thesaurus parses"),
            ),
            sememes: Arc::new(
                SynonymLexicon::parse(LexiconKind::Sememe, bundled::SEMEMES, origin)
                    .expect("bundled sememe lexicon parses"),
            ),
            pos: Arc::new(PosLexicon::parse(bundled::POS_LEXICON, origin).expect("bundled POS lexicon parses")),
            stopwords: Arc::new(StopwordSet::parse(bundled::STOPWORDS)),
            inflections: Arc::new(
                InflectionTable::parse(bundled::INFLECTIONS, origin).expect("bundled inflections parse"),
            ),
            char_maps: Arc::new(CharMaps::default()),
        }
    }

    /// Bundled resources with any file present in `dir` taking precedence.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        if !dir.is_dir() {
            return Err(Error::Io(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("{} is not a directory", dir.display()),
            )));
        }
        let mut res = Self::bundled();
        let p = dir.join(EMBEDDINGS_FILE);
        if p.exists() {
            res.embeddings = Arc::new(EmbeddingStore::load(&p)?.with_name(bundled::EMBEDDING_NAME));
        }
        let p = dir.join(THESAURUS_FILE);
        if p.exists() {
            res.thesaurus = Arc::new(SynonymLexicon::load(LexiconKind::Thesaurus, &p)?);
        }
        let p = dir.join(SEMEMES_FILE);
        if p.exists() {
            res.sememes = Arc::new(SynonymLexicon::load(LexiconKind::Sememe, &p)?);
        }
        let p = dir.join(POS_FILE);
        if p.exists() {
            res.pos = Arc::new(PosLexicon::load(&p)?);
        }
        let p = dir.join(STOPWORDS_FILE);
        if p.exists() {
            res.stopwords = Arc::new(StopwordSet::load(&p)?);
        }
        let p = dir.join(INFLECTIONS_FILE);
        if p.exists() {
            res.inflections = Arc::new(InflectionTable::load(&p)?);
        }
        let mut maps = CharMaps::default();
        let p = dir.join(HOMOGLYPHS_FILE);
        if p.exists() {
            maps = maps.with_homoglyph_file(&p)?;
        }
        let p = dir.join(KEYBOARD_FILE);
        if p.exists() {
            maps = maps.with_keyboard_file(&p)?;
        }
        res.char_maps = Arc::new(maps);
        Ok(res)
    }

    pub fn with_embeddings(mut self, path: impl AsRef<Path>) -> Result<Self> {
        self.embeddings = Arc::new(EmbeddingStore::load(path)?.with_name(bundled::EMBEDDING_NAME));
        Ok(self)
    }

    /// Replaces both synonym lexicons with the file at `path`.
    pub fn with_lexicon(mut self, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        self.thesaurus = Arc::new(SynonymLexicon::load(LexiconKind::Thesaurus, path)?);
        self.sememes = Arc::new(SynonymLexicon::load(LexiconKind::Sememe, path)?);
        Ok(self)
    }
}
