//! The report every subcommand returns, and its text and JSON renderings.

use lcoalg::report::{AxiomReport, Check};
use serde_json::{json, Map, Value};

/// Checks plus subcommand-specific output.
#[derive(Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Structured results; part of the JSON report.
    pub output: Map<String, Value>,
    /// Extra lines for the text rendering only.
    pub lines: Vec<String>,
    /// The seed actually used, when the subcommand is stochastic.
    pub seed: Option<u64>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, r: AxiomReport) {
        self.checks.extend(r.checks);
    }

    /// Appends `r` with every check renamed to `prefix/name`.
    pub fn extend_prefixed(&mut self, prefix: &str, r: AxiomReport) {
        self.checks.extend(r.checks.into_iter().map(|mut c| {
            c.name = format!("{prefix}/{}", c.name);
            c
        }));
    }

    /// Appends another report's checks under `prefix` and its output under the key `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        self.extend_prefixed(prefix, AxiomReport { checks: other.checks });
        if !other.output.is_empty() {
            self.output.insert(prefix.to_string(), Value::Object(other.output));
        }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.output.insert(key.to_string(), v.into());
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// True when every required check passed.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.required)
    }

    pub fn to_json(&self, command: &str) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), json!(c.name));
                m.insert("anchor".into(), json!(c.anchor));
                m.insert("verdict".into(), json!(verdict(c)));
                if let Some(w) = &c.witness {
                    m.insert("witness".into(), json!(w));
                }
                Value::Object(m)
            })
            .collect();
        json!({
            "command": command,
            "checks": checks,
            "output": Value::Object(self.output.clone()),
            "seed": self.seed,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    pub fn to_text(&self, command: &str) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!("{:<16} {:<44} {}\n", verdict(c), c.name, c.anchor));
            if let Some(w) = &c.witness {
                s.push_str(&format!("{:<16} {w}\n", ""));
            }
        }
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        let failed = self.checks.iter().filter(|c| c.required && !c.passed).count();
        let expected = self.checks.iter().filter(|c| !c.required && !c.passed).count();
        s.push_str(&format!(
            "{command}: {} checks, {} passed, {failed} failed, {expected} expected failures{}\n",
            self.checks.len(),
            self.checks.len() - failed - expected,
            self.seed.map(|x| format!(", seed {x}")).unwrap_or_default()
        ));
        s
    }
}

/// `PASS`, `FAIL`, or `FAIL (expected)` for informational checks that do not hold.
pub fn verdict(c: &Check) -> &'static str {
    match (c.passed, c.required) {
        (true, _) => "PASS",
        (false, true) => "FAIL",
        (false, false) => "FAIL (expected)",
    }
}

/// Turns an operation error into a failing check instead of aborting the run.
pub fn guarded(name: impl Into<String>, anchor: &str, r: lcoalg::Result<Check>) -> Check {
    match r {
        Ok(c) => c,
        Err(e) => Check::fail(name, anchor, format!("error: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_strings_and_exit_status() {
        let mut r = Report::new();
        r.push(Check::pass("a", "x"));
        r.push(Check::fail("b", "y", "w").informational());
        assert!(r.ok());
        assert_eq!(verdict(&r.checks[1]), "FAIL (expected)");
        r.push(Check::fail("c", "z", "w"));
        assert!(!r.ok());
        let j = r.to_json("t");
        assert_eq!(j["checks"][2]["verdict"], "FAIL");
        assert_eq!(j["checks"][0].get("witness"), None);
    }

    #[test]
    fn prefixes_compose() {
        let mut inner = Report::new();
        inner.push(Check::pass("law", "x"));
        inner.set("k", 1);
        let mut outer = Report::new();
        outer.absorb("part", inner);
        assert_eq!(outer.checks[0].name, "part/law");
        assert_eq!(outer.output["part"]["k"], 1);
    }
}
