//! Machine-readable reports. Every number is emitted as a string so that
//! arbitrary-size integers survive JSON consumers, and fields serialize in
//! declaration order.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub m: String,
    pub p: String,
    pub n: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub i: String,
    pub d: String,
    pub alpha: String,
    pub dim: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub request: Request,
    pub precision: String,
    pub tolerance: String,
    pub results: Vec<MethodResult>,
    pub agreement: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelatorReport {
    pub command: String,
    pub m: String,
    pub p: String,
    pub n: String,
    pub powers: String,
    pub q: String,
    pub precision: String,
    pub tolerance: String,
    pub result: MethodResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub m: String,
    pub p: String,
    pub q: String,
    pub n: String,
    pub dim: String,
    pub degree: String,
    pub methods: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_degree: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub command: String,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub command: String,
    pub n: String,
    pub alpha: String,
    pub count: String,
    pub truncated: bool,
    pub chains: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: String,
    pub failures: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub command: String,
    pub max_n: String,
    pub max_dim: String,
    pub precision: String,
    pub tolerance: String,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}
