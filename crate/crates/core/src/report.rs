//! Validation outcomes.
//!
//! Validators collect every violation they find instead of stopping at the
//! first, so callers can print a complete diagnosis and enumeration filters
//! can still ask a cheap yes/no question.

use std::fmt;

/// What a validity rule was broken by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    /// The overall length is impossible for the declared kind.
    Length,
    /// An entry is not a symbol the object may contain.
    SymbolOutOfRange,
    /// A symbol does not appear exactly twice.
    SymbolCount,
    /// The two copies of a symbol are at the wrong cycle distance.
    CycleDistance,
    /// The two copies of a symbol are at the wrong linear gap.
    LinearGap,
    /// The wrong number of null (`0`) entries for the declared kind.
    NullCount,
    /// A null entry sits at a position the declared kind does not allow.
    NullPosition,
    /// A symbol outside the declared symbol set occurs.
    UnexpectedSymbol,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ViolationKind::Length => "length",
            ViolationKind::SymbolOutOfRange => "symbol-out-of-range",
            ViolationKind::SymbolCount => "symbol-count",
            ViolationKind::CycleDistance => "cycle-distance",
            ViolationKind::LinearGap => "linear-gap",
            ViolationKind::NullCount => "null-count",
            ViolationKind::NullPosition => "null-position",
            ViolationKind::UnexpectedSymbol => "unexpected-symbol",
        };
        f.write_str(name)
    }
}

/// One broken rule, with the symbol or position it concerns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// The symbol (for per-symbol rules) or position (for placement rules)
    /// the violation is about.
    pub subject: usize,
    /// Human-readable explanation.
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}): {}", self.kind, self.subject, self.detail)
    }
}

/// The result of running a validator: empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub(crate) fn push(&mut self, kind: ViolationKind, subject: usize, detail: impl Into<String>) {
        self.violations.push(Violation {
            kind,
            subject,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
