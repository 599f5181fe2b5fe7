//! Report envelopes and the exit-code taxonomy.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use twofib_core::homotopy_engine::{Budgets, Tri};

pub const SCHEMA: &str = "twofib-report/1";

/// 0 decisive success, 2 decisive failure with a witness, 3 undecided.
/// Input errors exit with 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Success,
    Failure,
    Unknown,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Failure => 2,
            Outcome::Unknown => 3,
        }
    }

    pub fn from_tri(t: Tri) -> Self {
        match t {
            Tri::Yes => Outcome::Success,
            Tri::No => Outcome::Failure,
            Tri::Unknown => Outcome::Unknown,
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Success
        } else {
            Outcome::Failure
        }
    }
}

/// A run that produced no report. Spent budgets count as undecided.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Budget(_) => Outcome::Unknown.code(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Budget(m) => f.write_str(m),
        }
    }
}

impl From<twofib_core::Error> for CliError {
    fn from(e: twofib_core::Error) -> Self {
        match e {
            twofib_core::Error::Budget(_) => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// What a command hands back: the JSON result, its outcome and a one-line
/// summary for stderr.
pub struct Done {
    pub outcome: Outcome,
    pub summary: String,
    pub params: Value,
    pub result: Value,
    /// Printed instead of the JSON report when no `--out` is given.
    pub table: Option<String>,
}

#[derive(Serialize)]
pub struct Envelope<'a> {
    pub schema: &'static str,
    pub command: &'a str,
    pub outcome: Outcome,
    pub cap: usize,
    pub budgets: Budgets,
    pub params: &'a Value,
    pub result: &'a Value,
}

pub fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}
