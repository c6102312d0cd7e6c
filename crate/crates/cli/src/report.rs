//! The single output document of every command. Field order is fixed by the
//! struct so identical runs serialize byte-identically.

use crate::error::{CliError, ErrorKind};
use perdec_core::abelian::{ConditionList, WindowCondition};
use perdec_core::numeric::format_rational;
use perdec_core::{FnVec, ViolationCertificate};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Decomposable,
    NotDecomposable,
    ConditionsOnly,
    Valid,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub orbit: usize,
    pub partition: Vec<Vec<usize>>,
    pub chosen: Vec<Vec<i64>>,
    pub witness: usize,
    pub value: String,
}

impl CertificateJson {
    pub fn from_certificate(certificate: &ViolationCertificate) -> Self {
        Self {
            orbit: certificate.orbit_id,
            partition: certificate.partition.blocks.clone(),
            chosen: certificate
                .chosen
                .iter()
                .map(|e| e.word().to_vec())
                .collect(),
            witness: certificate.witness,
            value: format_rational(&certificate.value),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub verdict: Verdict,
    pub parts: Option<Vec<Vec<String>>>,
    pub certificate: Option<CertificateJson>,
    pub diagnostics: Map<String, Value>,
}

impl Report {
    pub fn new(verdict: Verdict) -> Self {
        Self {
            verdict,
            parts: None,
            certificate: None,
            diagnostics: Map::new(),
        }
    }

    pub fn with_parts(mut self, parts: &[FnVec]) -> Self {
        self.parts = Some(parts.iter().map(fnvec_strings).collect());
        self
    }

    pub fn with_raw_parts(mut self, parts: Vec<Vec<String>>) -> Self {
        self.parts = Some(parts);
        self
    }

    pub fn with_certificate(mut self, certificate: &ViolationCertificate) -> Self {
        self.certificate = Some(CertificateJson::from_certificate(certificate));
        self
    }

    pub fn with_diagnostic(mut self, key: &str, value: Value) -> Self {
        self.diagnostics.insert(key.to_string(), value);
        self
    }

    pub fn from_error(error: &CliError) -> Self {
        Report::new(Verdict::Error)
            .with_diagnostic(
                "kind",
                json!(match error.kind {
                    ErrorKind::Input => "input",
                    ErrorKind::Internal => "internal",
                }),
            )
            .with_diagnostic("message", json!(error.message))
    }

    /// Exit code is a function of the verdict (errors carry their kind in
    /// the diagnostics).
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Decomposable | Verdict::ConditionsOnly | Verdict::Valid => 0,
            Verdict::NotDecomposable => 1,
            Verdict::Error => match self.diagnostics.get("kind").and_then(Value::as_str) {
                Some("internal") => 3,
                _ => 2,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

pub fn fnvec_strings(f: &FnVec) -> Vec<String> {
    f.values().iter().map(format_rational).collect()
}

pub fn window_condition_json(condition: &WindowCondition) -> Value {
    json!({
        "partition": condition.partition.blocks,
        "lcms": condition.lcms,
    })
}

pub fn condition_list_json(list: &ConditionList) -> Value {
    let entries: Vec<Value> = list
        .entries
        .iter()
        .map(|entry| {
            json!({
                "partition": entry.partition.blocks,
                "lcms": entry
                    .lcms
                    .iter()
                    .map(|v| v.coords().iter().map(format_rational).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "nontrivial": list.entries.len(),
        "trivial_count": list.trivial_count,
        "entries": entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_verdicts() {
        assert_eq!(Report::new(Verdict::Decomposable).exit_code(), 0);
        assert_eq!(Report::new(Verdict::ConditionsOnly).exit_code(), 0);
        assert_eq!(Report::new(Verdict::Valid).exit_code(), 0);
        assert_eq!(Report::new(Verdict::NotDecomposable).exit_code(), 1);
        assert_eq!(Report::from_error(&CliError::input("x")).exit_code(), 2);
        assert_eq!(Report::from_error(&CliError::internal("x")).exit_code(), 3);
    }

    #[test]
    fn report_serializes_all_fields() {
        let report = Report::new(Verdict::NotDecomposable);
        let value: Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(value["verdict"], "not_decomposable");
        assert!(value["parts"].is_null());
        assert!(value["certificate"].is_null());
        assert!(value["diagnostics"].is_object());
    }
}
