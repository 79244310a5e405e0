use thiserror::Error;

use preab_core::checker::CheckError;
use preab_core::corpus::CorpusError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown instance '{0}'")]
    UnknownInstance(String),
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error("malformed corpus: {0}")]
    Corpus(#[from] CorpusError),
    #[error("malformed input file: {0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("check failed: {0}")]
    Check(#[from] CheckError),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownInstance(_) | CliError::BadArgument(_) => 2,
            CliError::Corpus(_) | CliError::Input(_) | CliError::Read { .. } => 3,
            CliError::Write { .. } | CliError::Check(_) | CliError::Verification(_) => 1,
        }
    }
}
