use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl InvariantCheck {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        InvariantCheck { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub command: String,
    /// Hex SHA-256 of the input bytes.
    pub input_digest: String,
    pub parameters: BTreeMap<String, String>,
    pub result: serde_json::Value,
    pub invariant_checks: Vec<InvariantCheck>,
    pub tool_version: String,
    pub wall_time_ms: u64,
}

impl AnalysisReport {
    pub fn all_checks_pass(&self) -> bool {
        self.invariant_checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text).map_err(std::io::Error::other)
    }

    /// Whether `bytes` hash to the recorded digest.
    pub fn matches_input(&self, bytes: &[u8]) -> bool {
        digest(bytes) == self.input_digest
    }
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(digest(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn reports_round_trip() {
        let r = AnalysisReport {
            command: "variation".into(),
            input_digest: digest(b"x"),
            parameters: BTreeMap::from([("epsilon".into(), "0.1".into())]),
            result: serde_json::json!({"variations": ["0", "1.5"]}),
            invariant_checks: vec![InvariantCheck::new("jordan", true, "")],
            tool_version: TOOL_VERSION.into(),
            wall_time_ms: 3,
        };
        assert_eq!(AnalysisReport::from_json(&r.to_json()).unwrap(), r);
        assert!(r.matches_input(b"x"));
    }
}
