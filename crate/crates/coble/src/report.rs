use std::fmt;
use std::time::Duration;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, witness: Option<Value>) -> Check {
        Check { name: name.into(), status: Status::from_bool(ok), witness }
    }

    pub fn skip(name: impl Into<String>, reason: &str) -> Check {
        Check { name: name.into(), status: Status::Skip, witness: Some(json!({ "reason": reason })) }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "name": self.name, "status": self.status.as_str() });
        if let Some(w) = &self.witness {
            v["witness"] = w.clone();
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> VerificationReport {
        VerificationReport { suite: suite.into(), checks: Vec::new(), elapsed: Duration::ZERO }
    }

    pub fn push(&mut self, name: impl Into<String>, ok: bool, witness: Option<Value>) {
        self.checks.push(Check::new(name, ok, witness));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    /// Timing is left out unless asked for, so reports of identical runs compare byte-for-byte.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "suite": self.suite,
            "passed": self.passed(),
            "summary": {
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "skip": self.count(Status::Skip),
            },
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        });
        if timing {
            v["timing_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("[{}] {} :: {}\n", c.status, self.suite, c.name));
        }
        out.push_str(&format!(
            "{}: {} ({} pass, {} fail, {} skip)\n",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skips_do_not_fail_a_suite() {
        let mut r = VerificationReport::new("x");
        r.push("a", true, None);
        r.checks.push(Check::skip("b", "not applicable"));
        assert!(r.passed());
        r.push("c", false, Some(json!(3)));
        assert!(!r.passed());
        assert_eq!(r.failures().len(), 1);
        let v = r.to_json(false);
        assert_eq!(v["summary"]["fail"], 1);
        assert!(v.get("timing_ms").is_none());
        assert!(r.to_json(true).get("timing_ms").is_some());
    }

    #[test]
    fn empty_suite_passes() {
        assert!(VerificationReport::new("empty").passed());
    }
}
