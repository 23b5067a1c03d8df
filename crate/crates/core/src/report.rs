use serde::Serialize;

const KEPT_FAILURES: usize = 16;

/// Outcome of an exhaustive identity check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub checked: usize,
    pub failure_count: usize,
    /// First few failures; the first one is the witness.
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, instance: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            instance: instance.into(),
            checked: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn witness(&self) -> Option<&str> {
        self.failures.first().map(String::as_str)
    }

    pub fn tick(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg.into());
        }
    }

    /// Records one comparison.
    pub fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.tick();
        if !ok {
            self.fail(msg());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(format!("[{}] {f}", other.check));
            }
        }
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "check": self.check,
            "instance": self.instance,
            "status": self.status(),
            "checked": self.checked,
            "failures": self.failure_count,
        });
        if let Some(w) = self.witness() {
            v["witness"] = serde_json::Value::String(w.to_string());
        }
        v
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} [{}]: {} ({} checked", self.check, self.instance, self.status(), self.checked)?;
        if let Some(w) = self.witness() {
            write!(f, ", {} failures, first: {w}", self.failure_count)?;
        }
        write!(f, ")")
    }
}
