//! Verification report records: one JSON line per checked instance, plus
//! an aggregate summary.
//!
//! The JSONL stream is deterministic for a fixed corpus and seed; timing
//! lives only in the human-readable summary so reports stay byte-stable.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub property: String,
    pub group: String,
    pub instance: String,
    pub verdict: Verdict,
    /// Concrete counterexample data; always present on FAIL.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    /// A command line reproducing the failing instance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
}

impl Record {
    pub fn pass(property: &str, group: &str, instance: impl Into<String>) -> Self {
        Record {
            property: property.into(),
            group: group.into(),
            instance: instance.into(),
            verdict: Verdict::Pass,
            witness: None,
            repro: None,
        }
    }

    pub fn fail(
        property: &str,
        group: &str,
        instance: impl Into<String>,
        witness: serde_json::Value,
        repro: Option<String>,
    ) -> Self {
        Record {
            property: property.into(),
            group: group.into(),
            instance: instance.into(),
            verdict: Verdict::Fail,
            witness: Some(witness),
            repro,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyTally {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub per_property: BTreeMap<String, PropertyTally>,
    pub groups: Vec<String>,
    pub seed: u64,
    pub elapsed_ms: u128,
}

pub fn summarize(records: &[Record], groups: Vec<String>, seed: u64, elapsed_ms: u128) -> Summary {
    let mut per_property: BTreeMap<String, PropertyTally> = BTreeMap::new();
    let mut passed = 0;
    for record in records {
        let tally = per_property
            .entry(record.property.clone())
            .or_insert(PropertyTally { passed: 0, failed: 0 });
        if record.passed() {
            tally.passed += 1;
            passed += 1;
        } else {
            tally.failed += 1;
        }
    }
    Summary {
        total: records.len(),
        passed,
        failed: records.len() - passed,
        per_property,
        groups,
        seed,
        elapsed_ms,
    }
}
