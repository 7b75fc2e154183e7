use std::fmt::Write as _;
use std::path::Path;

use serde_json::Value;
use thiserror::Error;

use crate::args::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("{0}")]
    Internal(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Internal(_) | CliError::Io { .. } => 3,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }
}

impl From<numlab_core::Error> for CliError {
    fn from(e: numlab_core::Error) -> Self {
        use numlab_core::Error as E;
        match e {
            E::Internal(_) | E::PrecisionCeiling(_) | E::OrbitHitsBoundary(_) => CliError::Internal(e.to_string()),
            E::NoCoveringFound(_) => CliError::Check(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Output of one command in every format it supports.
#[derive(Debug, Default)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub csv: Option<String>,
    /// False when the command ran but the checked property does not hold.
    pub ok: bool,
}

impl Report {
    pub fn new(text: String, json: Value) -> Self {
        Self { text, json, csv: None, ok: true }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn failing(mut self) -> Self {
        self.ok = false;
        self
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Text => {
                let mut t = self.text.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                Ok(t)
            }
            Format::Json => Ok(to_json(&self.json)),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::Usage("csv output is not available for this command".into())),
        }
    }
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

/// Lines joined with a trailing newline.
pub fn lines<I: IntoIterator<Item = S>, S: AsRef<str>>(items: I) -> String {
    let mut s = String::new();
    for l in items {
        let _ = writeln!(s, "{}", l.as_ref());
    }
    s
}
