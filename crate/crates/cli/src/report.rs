use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Map, Value};

/// Everything a single invocation produced. `wall_time_ms` is the only
/// field that varies between identical runs.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub truncation: Map<String, Value>,
    pub results: Value,
    pub wall_time_ms: u64,
    pub version: String,
}

impl RunReport {
    pub fn flags(&self) -> Vec<String> {
        match self.truncation.get("flags") {
            Some(Value::Array(a)) => a.iter().filter_map(|v| v.as_str().map(str::to_owned)).collect(),
            _ => Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The JSON with the wall time blanked out.
    pub fn to_stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["wall_time_ms"] = Value::Null;
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}

pub(crate) fn seq(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", parts.join(", "))
}
