//! Pass/fail entries shared by the verification reports.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass() -> Self {
        Check { passed: true, witness: None }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Check { passed: false, witness: Some(witness.into()) }
    }

    /// Passes iff no witness was found.
    pub fn from_witness(witness: Option<String>) -> Self {
        Check { passed: witness.is_none(), witness }
    }
}
