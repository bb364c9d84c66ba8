//! Structured certification reports.
//!
//! A [`Certificate`] is an ordered list of named identities, each of which
//! either holds or carries a description of the first place it fails.

use std::fmt;

use crate::algebra::{Matrix, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violated(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub identity: String,
    pub outcome: Outcome,
}

impl Check {
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Certificate {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    /// True when every recorded identity holds. An empty certificate holds.
    pub fn holds(&self) -> bool {
        self.checks.iter().all(Check::holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds())
    }

    pub fn pass(&mut self, identity: impl Into<String>) {
        self.checks.push(Check {
            identity: identity.into(),
            outcome: Outcome::Holds,
        });
    }

    pub fn fail(&mut self, identity: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check {
            identity: identity.into(),
            outcome: Outcome::Violated(detail.into()),
        });
    }

    /// Records `identity` as holding iff `ok`.
    pub fn check(&mut self, identity: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(identity);
        } else {
            self.fail(identity, detail());
        }
    }

    /// Compares two matrices entrywise and records the first mismatch.
    pub fn check_matrix_eq<T: Scalar + fmt::Display>(
        &mut self,
        identity: impl Into<String>,
        found: &Matrix<T>,
        expected: &Matrix<T>,
    ) {
        let identity = identity.into();
        match first_mismatch(found, expected) {
            None => self.pass(identity),
            Some(detail) => self.fail(identity, detail),
        }
    }

    /// Appends the checks of `other`, prefixing each identity with `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: Certificate) {
        for c in other.checks {
            self.checks.push(Check {
                identity: format!("{prefix}{}", c.identity),
                outcome: c.outcome,
            });
        }
    }

    /// Converts a failing certificate into [`Error::Certification`].
    pub fn into_result(self) -> Result<Self> {
        if self.holds() {
            Ok(self)
        } else {
            Err(Error::Certification(self.to_string()))
        }
    }
}

pub(crate) fn first_mismatch<T: Scalar + fmt::Display>(found: &Matrix<T>, expected: &Matrix<T>) -> Option<String> {
    if found.shape() != expected.shape() {
        return Some(format!(
            "shape {:?} differs from expected {:?}",
            found.shape(),
            expected.shape()
        ));
    }
    for i in 0..found.rows() {
        for j in 0..found.cols() {
            if found[(i, j)] != expected[(i, j)] {
                return Some(format!(
                    "first mismatch at ({i},{j}): expected {}, found {}",
                    expected[(i, j)],
                    found[(i, j)]
                ));
            }
        }
    }
    None
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.subject.is_empty() {
            writeln!(f, "# {}", self.subject)?;
        }
        for c in &self.checks {
            match &c.outcome {
                Outcome::Holds => writeln!(f, "ok    {}", c.identity)?,
                Outcome::Violated(d) => writeln!(f, "FAIL  {}: {}", c.identity, d)?,
            }
        }
        let bad = self.violations().count();
        if bad == 0 {
            write!(f, "certified ({} identities)", self.checks.len())
        } else {
            write!(f, "NOT certified ({bad} of {} identities fail)", self.checks.len())
        }
    }
}
