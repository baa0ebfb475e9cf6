//! Serialisable verification report and its JSON and markdown renderings.

use std::fmt::Write as _;

use e3core::check::{CheckResult, Status};
use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum StatusTag {
    Pass,
    Fail,
    Skip,
}

impl From<Status> for StatusTag {
    fn from(s: Status) -> Self {
        match s {
            Status::Pass => StatusTag::Pass,
            Status::Fail => StatusTag::Fail,
            Status::Skip => StatusTag::Skip,
        }
    }
}

impl StatusTag {
    pub fn as_str(self) -> &'static str {
        match self {
            StatusTag::Pass => "PASS",
            StatusTag::Fail => "FAIL",
            StatusTag::Skip => "SKIP",
        }
    }
}

/// One row of the report; `paper_ref` carries the claim being checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check_id: String,
    pub paper_ref: String,
    pub status: StatusTag,
    pub expected: String,
    pub actual: String,
    pub millis: u64,
}

impl From<CheckResult> for CheckRecord {
    fn from(r: CheckResult) -> Self {
        CheckRecord {
            suite: r.suite,
            check_id: r.check_id,
            paper_ref: r.claim,
            status: r.status.into(),
            expected: r.expected,
            actual: r.actual,
            millis: r.millis,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Summary {
    pub fn of(results: &[CheckRecord]) -> Self {
        let count = |t| results.iter().filter(|r| r.status == t).count();
        Summary { pass: count(StatusTag::Pass), fail: count(StatusTag::Fail), skip: count(StatusTag::Skip) }
    }
}

/// Field order is the key order of the emitted JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub torsion_level: u32,
    pub summary: Summary,
    pub results: Vec<CheckRecord>,
}

impl Report {
    /// `summary` is always recomputed from `results`.
    pub fn new(torsion_level: u32, results: Vec<CheckRecord>) -> Self {
        Report { version: VERSION.to_string(), torsion_level, summary: Summary::of(&results), results }
    }

    pub fn is_consistent(&self) -> bool {
        self.summary == Summary::of(&self.results)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// One table per suite, suites in order of first appearance.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(out, "# e3verify report\n");
        let _ = writeln!(out, "version {}, torsion level {}\n", self.version, self.torsion_level);
        let _ = writeln!(out, "PASS {} / FAIL {} / SKIP {}\n", s.pass, s.fail, s.skip);
        let mut suites: Vec<&str> = Vec::new();
        for r in &self.results {
            if !suites.contains(&r.suite.as_str()) {
                suites.push(&r.suite);
            }
        }
        for suite in suites {
            let _ = writeln!(out, "## {suite}\n");
            let _ = writeln!(out, "| check | status | expected | actual | claim |");
            let _ = writeln!(out, "|---|---|---|---|---|");
            for r in self.results.iter().filter(|r| r.suite == suite) {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    cell(&r.check_id),
                    r.status.as_str(),
                    cell(&r.expected),
                    cell(&r.actual),
                    cell(&r.paper_ref)
                );
            }
            out.push('\n');
        }
        out
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}
