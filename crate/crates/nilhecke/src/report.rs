//! Check records and the report envelope shared by the CLI and the test suite.

use std::fmt::Display;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, equal: bool) -> Check {
        Check { name: name.into(), lhs: lhs.into(), rhs: rhs.into(), equal, detail: String::new() }
    }

    /// Compares two values and renders both sides.
    pub fn eq<T: Display + PartialEq>(name: impl Into<String>, lhs: &T, rhs: &T) -> Check {
        Check::new(name, lhs.to_string(), rhs.to_string(), lhs == rhs)
    }

    pub fn detail(mut self, d: impl Into<String>) -> Check {
        self.detail = d.into();
        self
    }

    /// An operator identity over a finite spanning set. Renders the first
    /// disagreement, or a count when everything agrees.
    pub fn over<I, T, F>(name: impl Into<String>, items: I, mut f: F) -> Check
    where
        I: IntoIterator,
        I::Item: Display,
        T: Display + PartialEq,
        F: FnMut(&I::Item) -> (T, T),
    {
        let mut count = 0usize;
        for it in items {
            let (l, r) = f(&it);
            if l != r {
                return Check::new(name, l.to_string(), r.to_string(), false).detail(format!("fails at {it}"));
            }
            count += 1;
        }
        let s = format!("agree on {count} inputs");
        Check::new(name, s.clone(), s, true).detail(format!("{count} inputs"))
    }

    /// A boolean fact.
    pub fn holds(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check::new(name, ok.to_string(), "true", ok).detail(detail)
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub status: Status,
    pub checks: Vec<Check>,
    pub timing_ms: u128,
}

impl Report {
    /// Sorts checks by name; status is pass iff every check holds, unless `info`.
    pub fn new(command: impl Into<String>, params: Value, mut checks: Vec<Check>, info: bool, timing_ms: u128) -> Report {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let status = if checks.iter().any(|c| !c.equal) && !info {
            Status::Fail
        } else if info {
            Status::Info
        } else {
            Status::Pass
        };
        Report { command: command.into(), params, status, checks, timing_ms }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}: {:?}\n", self.command, self.params, self.status);
        for c in &self.checks {
            s += &format!("  [{}] {}", if c.equal { "ok" } else { "FAIL" }, c.name);
            if c.lhs == c.rhs {
                s += &format!(": {}", c.lhs);
            } else {
                s += &format!(": {} | {}", c.lhs, c.rhs);
            }
            if !c.detail.is_empty() {
                s += &format!(" ({})", c.detail);
            }
            s.push('\n');
        }
        s += &format!("  {} checks in {} ms\n", self.checks.len(), self.timing_ms);
        s
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.equal)
}
