use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use cantor_ap::{Error, FORMAT};
use serde_json::Value;

/// Process exit status for a completed command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    /// Verification failed or the interval is not good.
    Rejected = 1,
}

#[derive(Debug)]
pub struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn code(&self) -> i32 {
        self.code
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidInput(_) | Error::NoSuchGapLength(_) => 2,
            Error::BaseCaseFailed { .. } | Error::RefinementFailed(_) => 3,
            Error::BudgetExceeded { .. } => 4,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T = Status> = Result<T, CliError>;

/// Tags an object document with the schema version and renders it.
pub fn document(mut v: Value) -> String {
    if let Value::Object(map) = &mut v {
        let mut tagged = serde_json::Map::new();
        tagged.insert("format".into(), FORMAT.into());
        tagged.extend(std::mem::take(map));
        *map = tagged;
    }
    let mut s = serde_json::to_string_pretty(&v).expect("documents serialize");
    s.push('\n');
    s
}

/// Prints to stdout, or writes `out` atomically via a sibling temp file.
pub fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    let Some(path) = out else {
        print!("{text}");
        return Ok(());
    };
    let io_err =
        |e: std::io::Error| CliError::invalid(format!("cannot write {}: {e}", path.display()));
    let name = path
        .file_name()
        .ok_or_else(|| CliError::invalid(format!("not a file path: {}", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    };
    write().map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_err(e)
    })?;
    eprintln!("wrote {}", path.display());
    Ok(())
}
