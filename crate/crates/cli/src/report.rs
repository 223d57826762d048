use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use ext_real::TriState;

pub const SCHEMA: &str = "ext-real-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Refuted,
    Unknown,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Holds => 0,
            Verdict::Refuted => 1,
            Verdict::Unknown => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Refuted => "refuted",
            Verdict::Unknown => "unknown",
        }
    }
}

impl From<TriState> for Verdict {
    fn from(t: TriState) -> Verdict {
        match t {
            TriState::Holds => Verdict::Holds,
            TriState::Refuted => Verdict::Refuted,
            TriState::Unknown(_) => Verdict::Unknown,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Budgets {
    pub fuel: u64,
    pub enum_bound: u64,
    pub size_bound: usize,
    pub pool_file: Option<String>,
    pub universe_file: Option<String>,
    pub seed: u64,
}

pub struct Outcome {
    pub verdict: Verdict,
    pub detail: Value,
}

impl Outcome {
    pub fn new(verdict: impl Into<Verdict>, detail: Value) -> Outcome {
        Outcome { verdict: verdict.into(), detail }
    }
}

/// Keys come out sorted, so equal inputs give equal bytes.
pub fn render(command: &str, input: Value, budgets: &Budgets, out: &Outcome) -> String {
    let detail = serde_json::to_string(&out.detail).expect("json values serialize");
    let digest = Sha256::digest(detail.as_bytes());
    let report = json!({
        "schema": SCHEMA,
        "tool": concat!("ext-real ", env!("CARGO_PKG_VERSION")),
        "command": command,
        "input": input,
        "budgets": budgets,
        "verdict": out.verdict.label(),
        "trace_digest": format!("sha256:{digest:x}"),
        "detail": out.detail,
    });
    serde_json::to_string_pretty(&report).expect("json values serialize")
}
