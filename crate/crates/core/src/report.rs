use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Outcome of a verification suite; serializes to
/// `{"d", "suite", "checks": [{"id", "pass", "witness"}], "pass"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub d: u32,
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(d: u32, suite: impl Into<String>) -> Self {
        Self {
            d,
            suite: suite.into(),
            checks: Vec::new(),
            pass: true,
        }
    }

    /// Records a check; `witness` is the first counterexample, if any.
    pub fn record(&mut self, id: impl Into<String>, witness: Option<String>) {
        let pass = witness.is_none();
        self.pass &= pass;
        self.checks.push(Check {
            id: id.into(),
            pass,
            witness,
        });
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.pass &= c.pass;
            self.checks.push(c);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report JSON is always serializable")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.id)?;
            if let Some(w) = &c.witness {
                write!(f, "  [{w}]")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "suite {} at d = {}: {}",
            self.suite,
            self.d,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}
