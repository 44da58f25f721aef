// Copyright 2026 The symplectomo Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;

/// Errors surfaced by the command layer. Every variant renders on one line.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] symplectomo_core::Error),
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn parse(token: impl Into<String>, reason: impl fmt::Display) -> Self {
        CliError::Parse {
            token: token.into(),
            reason: reason.to_string(),
        }
    }

    /// Machine-parseable code printed as `error[Code]`.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Parse { .. } => "ParseError",
            CliError::Format(_) => "FormatError",
            CliError::Config(_) => "ConfigError",
            CliError::Io(_) => "IoError",
        }
    }

    /// `error[Code]: message` with any embedded newlines flattened.
    pub fn render(&self) -> String {
        let msg = self.to_string().replace(['\n', '\r'], " ");
        format!("error[{}]: {}", self.code(), msg)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Format(format!("json: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Format(format!("csv: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
