use std::fmt;
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    /// Defining equations and uniqueness confirmed on evaluated prefixes only.
    #[serde(rename = "prefix-verified")]
    PrefixVerified,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::PrefixVerified => "prefix-verified",
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Verdict::Fail)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a failing check found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A universal-property instance with zero or several mediators.
    Mediators { instance: String, count: u64, mediators: Vec<String> },
    /// An element on which two sides of an equation differ.
    Element { element: String, left: String, right: String },
    Counterexample { instance: String, detail: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Mediators { instance, count, mediators } => {
                write!(f, "{count} mediators for {instance}")?;
                if !mediators.is_empty() {
                    write!(f, ": {}", mediators.join(" ; "))?;
                }
                Ok(())
            }
            Witness::Element { element, left, right } => write!(f, "at {element}: left gives {left}, right gives {right}"),
            Witness::Counterexample { instance, detail } => write!(f, "{instance}: {detail}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Instances of the quantified statement checked exhaustively.
    pub instances: u64,
    /// Candidate mediators enumerated.
    pub candidates: u64,
    /// Instances checked by seeded random sampling.
    pub sampled: u64,
    pub elapsed: Duration,
}

/// The outcome of one check.
///
/// A failing report always carries a witness; axiom A9 never reports `pass`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub axiom_id: String,
    pub instance: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub stats: Stats,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.verdict.is_failure()
    }
}
