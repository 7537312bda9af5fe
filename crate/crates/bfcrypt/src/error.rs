use std::process::ExitCode;

use crate::format::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error{}: {error}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, error: ParseError },
    /// Declared and used variable counts disagree, or a file has the wrong shape.
    #[error("{0}")]
    Mismatch(String),
    #[error("infeasible configuration: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Core(#[from] bfcrypt_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub(crate) fn parse(line: Option<usize>, error: ParseError) -> Self {
        CliError::Parse { line, error }
    }

    /// 2 for unusable input, 3 for a size cap, 4 for an infeasible search, 1 otherwise.
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Parse { .. } | CliError::Mismatch(_) => 2,
            CliError::Core(bfcrypt_core::Error::SizeCap { .. }) => 3,
            CliError::Infeasible(_) => 4,
            _ => 1,
        })
    }
}
