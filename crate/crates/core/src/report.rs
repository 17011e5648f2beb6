//! Pass/fail records shared by every verification routine and the CLI.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Stable,
    Unstable,
    /// Informational entry; never counts as a failure.
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn info(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Info,
            witness: Some(detail.into()),
        }
    }

    /// Pass when `ok`, otherwise fail with the lazily built witness.
    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, witness())
        }
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Fail | Status::Unstable)
    }
}

/// True when no check failed.
pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| !c.failed())
}
