use serde::Serialize;
use serde_json::{json, Value};

use cirigid::Error;

/// Document written to stdout for every invocation.
#[derive(Serialize)]
pub struct Report {
    pub command: String,
    /// Arguments after the program name; re-running them reproduces the report.
    pub invocation: Vec<String>,
    pub inputs: Value,
    pub seed: Option<u64>,
    pub result: Value,
    pub warnings: Vec<String>,
}

pub fn error_document(command: &str, invocation: &[String], e: &Error) -> Value {
    let mut err = json!({ "kind": if e.is_budget() { "budget" } else { "input" }, "message": e.to_string() });
    if let Error::Parse { line, column, .. } = e {
        err["line"] = json!(line);
        err["column"] = json!(column);
    }
    json!({ "command": command, "invocation": invocation, "error": err })
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        2
    } else {
        1
    }
}
