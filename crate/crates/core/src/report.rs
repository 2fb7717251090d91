use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    HypothesisFails,
    BudgetExceeded,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Combines two statuses; a budget overrun dominates, then failure.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (BudgetExceeded, _) | (_, BudgetExceeded) => BudgetExceeded,
            (Fail, _) | (_, Fail) => Fail,
            (HypothesisFails, _) | (_, HypothesisFails) => HypothesisFails,
            _ => Pass,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::HypothesisFails => "hypothesis-fails",
            Status::BudgetExceeded => "budget-exceeded",
        };
        f.write_str(s)
    }
}

/// Outcome of a verification, with the degree bound its claims are made under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    pub trusted_degree: isize,
    pub details: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, trusted_degree: isize) -> Self {
        CheckReport { check: check.into(), status: Status::Pass, trusted_degree, details: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    /// Records a condition; a false one turns the report into a failure.
    pub fn require(&mut self, ok: bool, line: impl Into<String>) {
        if !ok {
            self.status = self.status.and(Status::Fail);
            self.details.push(format!("FAILED: {}", line.into()));
        }
    }

    pub fn absorb(&mut self, other: CheckReport) {
        self.status = self.status.and(other.status);
        self.details.extend(other.details.into_iter().map(|d| format!("{}: {d}", other.check)));
    }

    /// Report standing in for a computation that ran out of budget.
    pub fn budget(check: impl Into<String>, err: &Error) -> Self {
        let mut r = CheckReport::new(check, -1);
        r.status = Status::BudgetExceeded;
        r.note(err.to_string());
        r
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} (trusted to degree {})", self.check, self.status, self.trusted_degree)?;
        for d in &self.details {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}
