use serde_json::json;
use thiserror::Error;

use diophlab_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    /// Input that does not match the expected JSON shape. `path` points
    /// at the offending value, `.` for the document root.
    #[error("{what} at {path}: {message}")]
    Schema {
        what: String,
        path: String,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    SelftestFailed(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 2 for bad parameters, 3 for undecidable at budget, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::Undecidable { .. } | CoreError::PrecisionUnattainable { .. } => 3,
                CoreError::NotCertified(_) => 1,
                _ => 2,
            },
            CliError::Schema { .. } | CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::SelftestFailed(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Schema { .. } => "schema",
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Csv(_) => "csv",
            CliError::SelftestFailed(_) => "selftest_failed",
        }
    }

    /// The machine-readable report written to stderr.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "error": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        if let CliError::Schema { path, what, .. } = self {
            v["path"] = json!(path);
            v["input"] = json!(what);
        }
        v
    }
}
