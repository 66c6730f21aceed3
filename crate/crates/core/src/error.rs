use std::io;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("duplicate document id `{0}`")]
    DuplicateDocId(String),

    #[error("empty document id at record {0}")]
    EmptyDocId(usize),

    #[error("collection has no documents")]
    EmptyCollection,

    #[error("unknown document `{0}`")]
    UnknownDocument(String),

    #[error("index format error: {0}")]
    Format(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("feature undefined for term `{term}`: {reason}")]
    UndefinedFeature { term: String, reason: String },

    #[error("classifier training failed: {0}")]
    Training(String),

    #[error("frequency sample is empty")]
    EmptySample,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
