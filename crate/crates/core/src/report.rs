//! Verification outcomes shared by every check.

use std::fmt;

use serde::Serialize;

/// Where an identity failed and what was left over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Basis elements (generators or indices) the identity was evaluated on.
    pub at: Vec<String>,
    /// Output component, when the identity is vector valued.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<String>,
    pub residual: String,
}

/// Result of checking one family of identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub subject: String,
    /// Number of identities evaluated before stopping.
    pub cases: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl VerifyReport {
    pub fn pass(check: &str, subject: &str, cases: usize) -> VerifyReport {
        VerifyReport { check: check.into(), subject: subject.into(), cases, passed: true, witness: None }
    }

    pub fn fail(check: &str, subject: &str, cases: usize, witness: Witness) -> VerifyReport {
        VerifyReport { check: check.into(), subject: subject.into(), cases, passed: false, witness: Some(witness) }
    }

    /// Combines reports; the first failure wins.
    pub fn all(check: &str, subject: &str, parts: impl IntoIterator<Item = VerifyReport>) -> VerifyReport {
        let mut cases = 0;
        for p in parts {
            cases += p.cases;
            if !p.passed {
                return VerifyReport { check: check.into(), subject: subject.into(), cases, ..p };
            }
        }
        VerifyReport::pass(check, subject, cases)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            return write!(f, "{} {}: pass ({} identities)", self.check, self.subject, self.cases);
        }
        write!(f, "{} {}: FAIL", self.check, self.subject)?;
        if let Some(w) = &self.witness {
            write!(f, " at ({})", w.at.join(","))?;
            if let Some(c) = &w.component {
                write!(f, " component {c}")?;
            }
            write!(f, ": residual {}", w.residual)?;
        }
        Ok(())
    }
}
