use thiserror::Error;

/// Input errors. Every variant maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },

    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dangling reference: {0}")]
    Reference(String),

    #[error("invalid document: {0}")]
    Invalid(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        source: syscons_core::Error,
    },

    #[error(transparent)]
    Core(#[from] syscons_core::Error),
}

impl CliError {
    pub fn context(context: impl Into<String>, source: syscons_core::Error) -> Self {
        Self::Context {
            context: context.into(),
            source,
        }
    }
}
