use std::collections::BTreeMap;
use std::fmt::Debug;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arena::GameId;

/// One failed check, with enough context to replay it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Failure {
    pub check: String,
    pub inputs: Vec<GameId>,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub suite_name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    pub checks_run: u64,
    /// Number of instances run per check name.
    pub checks: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
    /// Suite-specific results such as counts and witnesses.
    #[serde(default)]
    pub findings: BTreeMap<String, Value>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Accumulates checks into a [`SuiteReport`].
#[derive(Debug)]
pub struct Suite {
    name: String,
    seed: Option<u64>,
    checks: BTreeMap<String, u64>,
    failures: Vec<Failure>,
    findings: BTreeMap<String, Value>,
    started: Instant,
}

impl Suite {
    pub fn new(name: &str) -> Self {
        Suite {
            name: name.to_string(),
            seed: None,
            checks: BTreeMap::new(),
            failures: Vec::new(),
            findings: BTreeMap::new(),
            started: Instant::now(),
        }
    }

    pub fn seeded(name: &str, seed: u64) -> Self {
        Suite {
            seed: Some(seed),
            ..Self::new(name)
        }
    }

    /// Records one instance of `check`; a mismatch becomes a failure.
    pub fn check_eq<T: PartialEq + Debug>(&mut self, check: &str, inputs: &[GameId], expected: T, got: T) -> bool {
        *self.checks.entry(check.to_string()).or_default() += 1;
        let ok = expected == got;
        if !ok {
            self.failures.push(Failure {
                check: check.to_string(),
                inputs: inputs.to_vec(),
                expected: format!("{expected:?}"),
                got: format!("{got:?}"),
            });
        }
        ok
    }

    pub fn check(&mut self, check: &str, inputs: &[GameId], holds: bool) -> bool {
        self.check_eq(check, inputs, true, holds)
    }

    /// Records a failure for a check whose inputs could not be built.
    pub fn error(&mut self, check: &str, inputs: &[GameId], error: impl std::fmt::Display) {
        *self.checks.entry(check.to_string()).or_default() += 1;
        self.failures.push(Failure {
            check: check.to_string(),
            inputs: inputs.to_vec(),
            expected: "a verdict".to_string(),
            got: format!("error: {error}"),
        });
    }

    pub fn finding(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("findings are plain data");
        self.findings.insert(key.to_string(), value);
    }

    /// Folds a sub-suite's checks and failures into this one.
    pub fn absorb(&mut self, other: SuiteReport) {
        for (k, v) in other.checks {
            *self.checks.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
        self.findings.extend(other.findings);
    }

    pub fn finish(mut self) -> SuiteReport {
        self.failures.sort();
        SuiteReport {
            suite_name: self.name,
            seed: self.seed,
            checks_run: self.checks.values().sum(),
            checks: self.checks,
            failures: self.failures,
            findings: self.findings,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_are_sorted_and_counted() {
        let mut s = Suite::new("demo");
        s.check("b", &[GameId::ZERO], false);
        s.check_eq("a", &[], 1, 2);
        s.check("a", &[], true);
        let r = s.finish();
        assert_eq!(r.checks_run, 3);
        assert_eq!(r.checks["a"], 2);
        assert_eq!(r.failures[0].check, "a");
        assert_eq!(r.failures[0].expected, "1");
        assert!(!r.passed());
    }
}
