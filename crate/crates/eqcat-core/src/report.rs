//! Line-oriented verification reports with a JSON mirror.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

/// One verified law: what was checked, over what domain, and a witness on
/// failure.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub law: String,
    pub domain: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report { checks: Vec::new() }
    }

    pub fn pass(&mut self, law: impl Into<String>, domain: impl Into<String>) {
        self.checks.push(Check {
            law: law.into(),
            domain: domain.into(),
            status: Status::Pass,
            witness: None,
        });
    }

    pub fn fail(
        &mut self,
        law: impl Into<String>,
        domain: impl Into<String>,
        witness: impl Into<String>,
    ) {
        self.checks.push(Check {
            law: law.into(),
            domain: domain.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        });
    }

    /// Record a law outcome: pass when `witness` is None, fail otherwise.
    pub fn record(
        &mut self,
        law: impl Into<String>,
        domain: impl Into<String>,
        witness: Option<String>,
    ) {
        match witness {
            None => self.pass(law, domain),
            Some(w) => self.fail(law, domain, w),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            write!(f, "{status} {} [{}]", c.law, c.domain)?;
            if let Some(w) = &c.witness {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
