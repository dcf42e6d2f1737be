//! Deterministic JSON reports.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub expected: Value,
    pub actual: Value,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

/// Inputs, outputs and expectation checks of one experiment.
///
/// Everything is keyed by `BTreeMap`s, so serialization order is fixed and
/// two runs with the same inputs produce identical bytes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentReport {
    pub experiment: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub checks: BTreeMap<String, Check>,
    /// Only filled in on request; it would break byte-identical output.
    pub timing_ms: Option<u128>,
}

impl ExperimentReport {
    pub fn new(experiment: &str) -> Self {
        ExperimentReport {
            experiment: experiment.to_string(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn output(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), v.into());
        self
    }

    pub fn check(&mut self, key: &str, expected: impl Into<Value>, actual: impl Into<Value>) -> &mut Self {
        self.checks.insert(
            key.to_string(),
            Check {
                expected: expected.into(),
                actual: actual.into(),
            },
        );
        self
    }

    /// Record a boolean invariant that must hold.
    pub fn verdict(&mut self, key: &str, holds: bool) -> &mut Self {
        self.check(key, true, holds)
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|(_, c)| !c.passed())
            .map(|(k, c)| format!("{k}: expected {}, got {}", c.expected, c.actual))
            .collect()
    }

    pub fn output_value(&self, key: &str) -> Option<&Value> {
        self.outputs.get(key)
    }

    pub fn to_json(&self) -> Value {
        let checks: Map<String, Value> = self
            .checks
            .iter()
            .map(|(k, c)| {
                (
                    k.clone(),
                    json!({ "expected": c.expected, "actual": c.actual, "passed": c.passed() }),
                )
            })
            .collect();
        let mut root = json!({
            "experiment": self.experiment,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": checks,
            "passed": self.passed(),
        });
        if let Some(ms) = self.timing_ms {
            root["timing_ms"] = json!(ms as u64);
        }
        root
    }

    pub fn to_pretty_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("reports always serialize") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_checks_counted() {
        let mut r = ExperimentReport::new("demo");
        r.input("zeta", 1).input("alpha", 2);
        r.check("b", 3, 3).verdict("a", false);
        assert!(!r.passed());
        assert_eq!(r.failures(), vec!["a: expected true, got false".to_string()]);
        let text = r.to_pretty_string();
        assert!(text.find("alpha").unwrap() < text.find("zeta").unwrap());
        assert!(!text.contains("timing"));
    }
}
