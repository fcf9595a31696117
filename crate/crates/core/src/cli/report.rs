//! Report records shared by every verb.

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

/// Version tag carried by every JSON report.
pub const SCHEMA: &str = "radicals-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Engine,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
}

/// Successful verb result: JSON payload, text rendering, exit code.
pub(crate) struct Outcome {
    pub provenance: Provenance,
    pub payload: Value,
    pub text: String,
    pub code: i32,
}

impl Outcome {
    pub fn new(provenance: Provenance, payload: Value, text: String) -> Self {
        Outcome { provenance, payload, text, code: 0 }
    }
}

/// A failed verb, with the input text when it helps locate the problem.
pub(crate) struct Failure {
    pub error: Error,
    pub input: Option<String>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, input: None }
    }
}

pub(crate) trait WithInput<T> {
    fn input(self, s: &str) -> std::result::Result<T, Failure>;
}

impl<T> WithInput<T> for crate::Result<T> {
    fn input(self, s: &str) -> std::result::Result<T, Failure> {
        self.map_err(|error| Failure { error, input: Some(s.to_string()) })
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => 3,
        _ => 2,
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Resource(_) => "resource",
        Error::Parse { .. } => "parse",
        Error::Precondition(_) => "precondition",
    }
}

impl Report {
    pub(crate) fn ok(command: &str, o: &Outcome) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            status: Status::Ok,
            provenance: Some(o.provenance),
            payload: Some(o.payload.clone()),
            error: None,
        }
    }

    pub(crate) fn failed(command: &str, f: &Failure) -> Self {
        let offset = match &f.error {
            Error::Parse { offset, .. } => Some(*offset),
            _ => None,
        };
        let message = match &f.error {
            Error::Parse { message, .. } => message.clone(),
            Error::Domain(m) | Error::Resource(m) | Error::Precondition(m) => m.clone(),
        };
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            status: Status::Error,
            provenance: None,
            payload: None,
            error: Some(ErrorBody { kind: kind(&f.error), message, offset, input: f.input.clone() }),
        }
    }
}

/// Human-readable error, with a caret under parse errors.
pub(crate) fn render_failure(f: &Failure) -> String {
    let mut s = format!("error: {}\n", f.error);
    if let (Error::Parse { offset, .. }, Some(input)) = (&f.error, &f.input) {
        let col = input.get(..*offset).map_or(*offset, |p| p.chars().count());
        s.push_str(&format!("  {input}\n  {}^\n", " ".repeat(col)));
    }
    s
}
