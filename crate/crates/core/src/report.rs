//! Machine-readable verification outcomes shared by every checker.

use serde::Serialize;

use crate::exactnum::{fmt_rational, Rational};

/// One failed comparison; both sides rendered exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    pub i: i64,
    pub lhs: String,
    pub rhs: String,
}

impl Violation {
    pub fn rational(i: i64, lhs: &Rational, rhs: &Rational) -> Self {
        Violation {
            m: None,
            i,
            lhs: fmt_rational(lhs),
            rhs: fmt_rational(rhs),
        }
    }

    pub fn text(i: i64, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Violation {
            m: None,
            i,
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    pub fn at_m(mut self, m: i64) -> Self {
        self.m = Some(m);
        self
    }
}

/// Outcome of one theorem, identity or sign sweep at one `m` (or one grid).
///
/// `pass` is true exactly when `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub m: u64,
    pub pass: bool,
    pub checked: u64,
    pub skipped_vacuous: u64,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(theorem: impl Into<String>, m: u64) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            m,
            pass: true,
            checked: 0,
            skipped_vacuous: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, violation: impl FnOnce() -> Violation) {
        self.checked += 1;
        if !ok {
            self.fail(violation());
        }
    }

    pub fn fail(&mut self, v: Violation) {
        self.violations.push(v);
        self.pass = false;
    }

    pub fn skip_vacuous(&mut self) {
        self.skipped_vacuous += 1;
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Folds another report's counts and violations into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.skipped_vacuous += other.skipped_vacuous;
        for v in other.violations {
            self.fail(v);
        }
        self.notes.extend(other.notes);
    }
}
