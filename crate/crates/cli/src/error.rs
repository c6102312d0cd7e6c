//! Command-level errors: input problems exit with code 2, internal
//! invariant failures with code 3. Commands never panic; a panic caught at
//! the top level is reported as an internal failure.

use perdec_core::abelian::AbelianError;
use perdec_core::action::ActionError;
use perdec_core::condition::ConditionError;
use perdec_core::decompose::DecomposeError;
use perdec_core::numeric::NumericError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Input,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Internal,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Input => 2,
            ErrorKind::Internal => 3,
        }
    }
}

impl From<DecomposeError> for CliError {
    fn from(e: DecomposeError) -> Self {
        match e {
            DecomposeError::InternalInvariantFailure { .. } => Self::internal(e.to_string()),
            other => Self::input(other.to_string()),
        }
    }
}

impl From<ConditionError> for CliError {
    fn from(e: ConditionError) -> Self {
        Self::input(e.to_string())
    }
}

impl From<ActionError> for CliError {
    fn from(e: ActionError) -> Self {
        Self::input(e.to_string())
    }
}

impl From<AbelianError> for CliError {
    fn from(e: AbelianError) -> Self {
        Self::input(e.to_string())
    }
}

impl From<NumericError> for CliError {
    fn from(e: NumericError) -> Self {
        Self::input(e.to_string())
    }
}
