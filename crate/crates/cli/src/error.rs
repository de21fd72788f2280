use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("bad ring literal: {0}")]
    RingLiteral(String),
    #[error("scenario: {0}")]
    Schema(String),
    #[error("unresolved name `{0}`")]
    Resolve(String),
    #[error(transparent)]
    Core(#[from] ppmod::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

impl CliError {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        CliError::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
