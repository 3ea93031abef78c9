//! Per-axiom verification reports.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::Matrix;

/// Where two sides of an identity first disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub axiom: String,
    /// 1-based level, when the axiom is stated per level.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `lhs == rhs` for `axiom` at 0-based `level`. Shape disagreement
    /// is an error, not a failed check.
    pub fn compare(
        &mut self,
        axiom: &str,
        level: Option<usize>,
        lhs: &Matrix,
        rhs: &Matrix,
    ) -> Result<bool> {
        if lhs.shape() != rhs.shape() {
            return Err(Error::Shape(format!(
                "{axiom}: sides have shapes {:?} and {:?}",
                lhs.shape(),
                rhs.shape()
            )));
        }
        let witness = lhs.first_difference(rhs).map(|(row, col)| Witness {
            row,
            col,
            lhs: lhs.entry_string(row, col),
            rhs: rhs.entry_string(row, col),
        });
        let passed = witness.is_none();
        self.checks.push(Check {
            axiom: axiom.to_string(),
            level: level.map(|l| l + 1),
            passed,
            witness,
            note: None,
        });
        Ok(passed)
    }

    /// Records a check whose outcome is a plain predicate.
    pub fn record(&mut self, axiom: &str, level: Option<usize>, passed: bool, note: Option<String>) {
        self.checks.push(Check {
            axiom: axiom.to_string(),
            level: level.map(|l| l + 1),
            passed,
            witness: None,
            note,
        });
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.warnings.extend(other.warnings);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Outcome of every check of `axiom`, `None` if it was never checked.
    pub fn axiom_passed(&self, axiom: &str) -> Option<bool> {
        let mut seen = false;
        let mut ok = true;
        for c in self.checks.iter().filter(|c| c.axiom == axiom) {
            seen = true;
            ok &= c.passed;
        }
        seen.then_some(ok)
    }

    /// Keeps only checks whose axiom is listed.
    pub fn retain_axioms(&mut self, axioms: &[String]) {
        self.checks.retain(|c| axioms.contains(&c.axiom));
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.axiom)?;
        if let Some(level) = self.level {
            write!(f, " level={level}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " entry=({},{}) lhs={} rhs={}", w.row, w.col, w.lhs, w.rhs)?;
        }
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        for w in &self.warnings {
            writeln!(f, "WARN {w}")?;
        }
        Ok(())
    }
}
