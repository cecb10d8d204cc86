use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Exit status for a failed check that carries a witness.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit status when a resource cap stopped the computation.
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &str, bytes: &[u8]) -> Self {
        Self {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

/// The structured result of one invocation. Timing is opt-in so that the
/// default report is reproducible byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub version: String,
    pub inputs: Vec<InputDigest>,
    pub payload: Value,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// What a command produced before it is wrapped in a [`Report`].
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub inputs: Vec<InputDigest>,
    pub payload: Value,
    pub text: Vec<String>,
    pub warnings: Vec<String>,
    /// A re-asserted invariant that failed, with its witness.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: parse error: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] monact::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(monact::Error::SizeTooLarge { .. }) => EXIT_CAP,
            _ => EXIT_VALIDATION,
        }
    }
}
