//! Outcome records shared by every verification routine.

use std::fmt::Display;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

/// One verified claim. `claim` names the mathematical statement being checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: String,
    pub check_id: String,
    pub claim: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub millis: u64,
}

impl CheckResult {
    /// Passes iff `expected == actual`; both are rendered with `Display`.
    pub fn equal<T: PartialEq + Display>(
        suite: &str,
        check_id: impl Into<String>,
        claim: impl Into<String>,
        expected: &T,
        actual: &T,
    ) -> Self {
        CheckResult {
            suite: suite.to_string(),
            check_id: check_id.into(),
            claim: claim.into(),
            status: if expected == actual { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            actual: actual.to_string(),
            millis: 0,
        }
    }

    pub fn skip(suite: &str, check_id: impl Into<String>, claim: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckResult {
            suite: suite.to_string(),
            check_id: check_id.into(),
            claim: claim.into(),
            status: Status::Skip,
            expected: String::new(),
            actual: reason.into(),
            millis: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_millis(mut self, millis: u64) -> Self {
        self.millis = millis;
        self
    }
}

/// Runs `f` and stamps the elapsed wall time on its result.
pub fn timed(f: impl FnOnce() -> CheckResult) -> CheckResult {
    let t = Instant::now();
    let r = f();
    let ms = t.elapsed().as_millis() as u64;
    r.with_millis(ms)
}
