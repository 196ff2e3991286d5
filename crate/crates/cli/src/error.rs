use calvo_core::ModelError;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid `{field}`: {message}")]
    Config { field: String, message: String },

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// 2 for configuration and input errors, 1 for numerical or output failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Model(e) if e.is_input_error() => 2,
            CliError::Model(_) | CliError::Io { .. } => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Config { .. } => "ConfigError",
            CliError::Model(e) => e.kind(),
            CliError::Io { .. } => "IoError",
        }
    }

    fn field(&self) -> Option<String> {
        match self {
            CliError::Config { field, .. } => Some(field.clone()),
            CliError::Model(ModelError::Domain { field, .. }) => Some((*field).to_string()),
            CliError::Model(ModelError::UnknownPreset(_)) => Some("preset".into()),
            _ => None,
        }
    }

    /// Structured form written to stderr.
    pub fn to_json(&self) -> Value {
        json!({
            "error": self.kind(),
            "field": self.field(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        })
    }
}
