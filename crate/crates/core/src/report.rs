//! Structured verdicts for law checks.

use serde::Serialize;

/// The outcome of one algebraic check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// Short tag naming the law being checked.
    pub anchor: String,
    pub passed: bool,
    /// Informational checks never make a report fail.
    pub required: bool,
    /// A counterexample or explanation when the check fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Check { name: name.into(), anchor: anchor.into(), passed: true, required: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, anchor: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            passed: false,
            required: true,
            witness: Some(witness.into()),
        }
    }

    pub fn from_result(name: impl Into<String>, anchor: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Check::pass(name, anchor),
            Some(w) => Check::fail(name, anchor, w),
        }
    }

    pub fn informational(mut self) -> Self {
        self.required = false;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.witness = Some(note.into());
        self
    }

    pub fn verdict(&self) -> &'static str {
        match (self.passed, self.required) {
            (true, _) => "pass",
            (false, true) => "fail",
            (false, false) => "no",
        }
    }
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<Check>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }

    /// True when every required check passed.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.required)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.required && !c.passed)
    }
}

impl std::fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            write!(f, "[{:>4}] {:<40} {}", c.verdict(), c.name, c.anchor)?;
            if let Some(w) = &c.witness {
                write!(f, "  -- {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
