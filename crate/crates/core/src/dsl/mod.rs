//! The `.etcs` script language: parsing, static checks, execution and report rendering.
//!
//! ```text
//! set X = {a, b}
//! fn f : X -> X = {a |-> b, b |-> a}
//! let (P, p1, p2) = product(X, X)
//! assert f . f == id(X)
//! assert |P| == 4
//! check A5 size 2
//! ```

mod ast;
mod exec;
mod lexer;
mod parser;
mod pretty;
mod render;

use std::fmt;

pub use ast::{Arg, Call, Claim, FnExpr, FnTerm, Loc, Name, Script, SetExpr, Stmt, StmtKind, Targets};
pub use exec::{execute, run, Execution};
pub use parser::parse;
pub use pretty::pretty;
pub use render::{render_diagnostics, render_report, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// A located message about a script. Lines and columns are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub hint: Option<String>,
}

impl Diagnostic {
    pub fn error(loc: Loc, message: impl Into<String>) -> Diagnostic {
        Diagnostic { severity: Severity::Error, line: loc.line, col: loc.col, message: message.into(), hint: None }
    }

    pub fn warning(loc: Loc, message: impl Into<String>) -> Diagnostic {
        Diagnostic { severity: Severity::Warning, line: loc.line, col: loc.col, message: message.into(), hint: None }
    }

    pub fn with_hint(mut self, hint: impl Into<String>) -> Diagnostic {
        self.hint = Some(hint.into());
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.col, self.severity, self.message)?;
        if let Some(hint) = &self.hint {
            write!(f, "\n  hint: {hint}")?;
        }
        Ok(())
    }
}
