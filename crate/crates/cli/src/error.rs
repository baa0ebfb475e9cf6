use thiserror::Error;

/// Every error the front end reports. All of them map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    /// `pos` is a 1-based character column.
    #[error("PARSE_ERROR at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("EVAL_ERROR: {0}")]
    Eval(String),
    #[error(transparent)]
    Core(#[from] e3core::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
