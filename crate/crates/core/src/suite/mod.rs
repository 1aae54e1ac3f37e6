//! Bounded, exhaustive (or strided/sampled when capped) certification of
//! the bivariant axioms, the orientation axioms and the universal
//! transformation, for any [`Theory`].

mod additivity;
mod bivariant;
mod grothendieck;
mod orientation;
mod space;

pub use additivity::{check_additivity, Basis};
pub use bivariant::check_bivariant_axioms;
pub use grothendieck::check_grothendieck;
pub use orientation::check_orientation_axioms;

use serde::Serialize;
use std::fmt;

pub use crate::theory::Bounds;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Inconclusive => "inconclusive",
            Status::NotApplicable => "n/a",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// The configuration: contexts, squares, labels.
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    /// Replayable DSL expressions for the two sides, `lhs == rhs`.
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomRecord {
    pub name: String,
    pub anchor: String,
    /// Size of the full instance space before capping.
    pub space: usize,
    pub instances: usize,
    pub passes: usize,
    pub failures: usize,
    pub skips: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub first_counterexample: Option<Counterexample>,
}

impl AxiomRecord {
    pub(crate) fn not_applicable(name: &str, anchor: &str, note: String) -> Self {
        AxiomRecord {
            name: name.to_string(),
            anchor: anchor.to_string(),
            space: 0,
            instances: 0,
            passes: 0,
            failures: 0,
            skips: 0,
            status: Status::NotApplicable,
            note: Some(note),
            first_counterexample: None,
        }
    }

    pub(crate) fn finish(mut self) -> Self {
        self.status = if self.failures > 0 {
            Status::Fail
        } else if self.instances == 0 || self.skips * 2 > self.instances {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub category: String,
    pub theory: String,
    pub suite: String,
    pub records: Vec<AxiomRecord>,
}

impl CheckReport {
    pub(crate) fn new(category: &str, theory: &str, suite: &str) -> Self {
        CheckReport {
            category: category.to_string(),
            theory: theory.to_string(),
            suite: suite.to_string(),
            records: Vec::new(),
        }
    }

    pub fn record(&self, name: &str) -> Option<&AxiomRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn failures(&self) -> usize {
        self.records.iter().map(|r| r.failures).sum()
    }

    pub fn skips(&self) -> usize {
        self.records.iter().map(|r| r.skips).sum()
    }

    /// True when no record failed and none is inconclusive.
    pub fn all_pass(&self) -> bool {
        self.records
            .iter()
            .all(|r| matches!(r.status, Status::Pass | Status::NotApplicable))
    }

    pub fn failed(&self) -> impl Iterator<Item = &AxiomRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.suite = format!("{}+{}", self.suite, other.suite);
        self.records.extend(other.records);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} on {} [{}]", self.theory, self.category, self.suite)?;
        writeln!(
            f,
            "{:<28} {:>9} {:>9} {:>9} {:>7} {:>7}  status",
            "axiom", "space", "checked", "passed", "failed", "skipped"
        )?;
        for r in &self.records {
            writeln!(
                f,
                "{:<28} {:>9} {:>9} {:>9} {:>7} {:>7}  {}",
                r.name, r.space, r.instances, r.passes, r.failures, r.skips, r.status
            )?;
        }
        for r in &self.records {
            if let Some(note) = &r.note {
                writeln!(f, "note {}: {}", r.name, note)?;
            }
            if let Some(c) = &r.first_counterexample {
                writeln!(f, "counterexample {} ({}):", r.name, r.anchor)?;
                writeln!(f, "  instance: {}", c.instance)?;
                writeln!(f, "  lhs: {}", c.lhs)?;
                writeln!(f, "  rhs: {}", c.rhs)?;
                writeln!(f, "  witness: {}", c.witness)?;
            }
        }
        Ok(())
    }
}
