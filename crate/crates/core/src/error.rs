use std::path::PathBuf;

/// Errors raised anywhere in the attack pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("word index {index} out of range for a text of {len} words")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("replacement word must not be empty")]
    EmptyWord,

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("malformed model output: {0}")]
    MalformedOutput(String),

    #[error("model `{0}` does not expose gradients")]
    NotWhiteBox(String),

    #[error("unknown recipe `{0}`")]
    UnknownRecipe(String),

    #[error("`{recipe}` needs {component}, which is not supported")]
    UnsupportedComponent { recipe: String, component: String },

    #[error("unknown component `{0}`")]
    UnknownComponent(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn config(message: impl Into<String>) -> Self {
        Error::Config(message.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
