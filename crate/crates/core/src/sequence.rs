//! Linear Skolem-type sequences and their validators.
//!
//! A Skolem-type sequence over a symbol set `D` places each `i ∈ D` exactly
//! twice, at positions exactly `i` apart; remaining cells (if any) hold null
//! entries written `0`. Classical Skolem sequences use `D = {1..=m}` with no
//! nulls, Langford sequences use `D = {d..=d+m-1}`, and extended sequences
//! allow a single null.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::report::{ValidationReport, ViolationKind};
use crate::text::format_symbol_list;

/// A linear sequence of symbols, using `0` for null entries.
///
/// Positions are 1-based in every public API.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkolemTypeSeq {
    symbols: Vec<u32>,
}

impl SkolemTypeSeq {
    pub fn new(symbols: Vec<u32>) -> Self {
        SkolemTypeSeq { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u32> {
        self.symbols
    }

    /// The entry at 1-based position `p`.
    pub fn symbol_at(&self, p: usize) -> u32 {
        self.symbols[p - 1]
    }

    /// The distinct positive symbols occurring in the sequence.
    pub fn symbol_set(&self) -> BTreeSet<u32> {
        self.symbols.iter().copied().filter(|&s| s > 0).collect()
    }

    /// 1-based positions of all null entries.
    pub fn null_positions(&self) -> Vec<usize> {
        self.symbols
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// A hooked sequence carries its single null in the penultimate cell.
    pub fn is_hook(&self) -> bool {
        self.len() >= 2 && self.null_positions() == [self.len() - 1]
    }
}

impl fmt::Display for SkolemTypeSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_symbol_list(&self.symbols))
    }
}

/// Which family of placement rules to validate against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceKind {
    /// Symbol set `{1..=m}` with `m` inferred from the length; no nulls.
    Skolem,
    /// Symbol set `{defect..=defect+m-1}` with `m` inferred; no nulls.
    Langford { defect: u32 },
    /// Arbitrary symbol set, either declared or inferred from the entries;
    /// no nulls.
    SkolemType { symbols: Option<BTreeSet<u32>> },
    /// Skolem-type over the inferred symbol set plus exactly one null, at
    /// the given 1-based position.
    Extended { null_at: usize },
}

/// Checks the placement rules of `kind` and reports every violation.
pub fn validate_sequence(seq: &SkolemTypeSeq, kind: &SequenceKind) -> ValidationReport {
    let mut report = ValidationReport::default();
    let len = seq.len();
    if len == 0 {
        report.push(ViolationKind::Length, 0, "sequence is empty");
        return report;
    }

    // Null bookkeeping first: which nulls are allowed where.
    let nulls = seq.null_positions();
    match kind {
        SequenceKind::Extended { null_at } => {
            if nulls.len() != 1 {
                report.push(
                    ViolationKind::NullCount,
                    nulls.len(),
                    format!("expected exactly 1 null, found {}", nulls.len()),
                );
            } else if nulls[0] != *null_at {
                report.push(
                    ViolationKind::NullPosition,
                    nulls[0],
                    format!("null at position {}, declared at {}", nulls[0], null_at),
                );
            }
        }
        _ => {
            if let Some(&p) = nulls.first() {
                report.push(
                    ViolationKind::NullCount,
                    p,
                    format!("{} null entries in a null-free kind", nulls.len()),
                );
            }
        }
    }

    // The symbol set the placement rule runs over.
    let declared: BTreeSet<u32> = match kind {
        SequenceKind::Skolem => {
            if !len.is_multiple_of(2) {
                report.push(
                    ViolationKind::Length,
                    len,
                    format!("length {len} is odd; a Skolem sequence has length 2m"),
                );
                return report;
            }
            (1..=(len / 2) as u32).collect()
        }
        SequenceKind::Langford { defect } => {
            if *defect == 0 {
                report.push(ViolationKind::Length, 0, "Langford defect must be >= 1");
                return report;
            }
            if !len.is_multiple_of(2) {
                report.push(
                    ViolationKind::Length,
                    len,
                    format!("length {len} is odd; a Langford sequence has length 2m"),
                );
                return report;
            }
            (*defect..*defect + (len / 2) as u32).collect()
        }
        SequenceKind::SkolemType { symbols: Some(d) } => {
            if len != 2 * d.len() {
                report.push(
                    ViolationKind::Length,
                    len,
                    format!(
                        "length {} does not match the declared symbol set of size {}",
                        len,
                        d.len()
                    ),
                );
            }
            d.clone()
        }
        SequenceKind::SkolemType { symbols: None } => seq.symbol_set(),
        SequenceKind::Extended { .. } => seq.symbol_set(),
    };

    // Occurrence positions per positive entry.
    let mut positions: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &s) in seq.symbols().iter().enumerate() {
        if s > 0 {
            positions.entry(s).or_default().push(i + 1);
        }
    }

    for &s in positions.keys() {
        if !declared.contains(&s) {
            report.push(
                ViolationKind::UnexpectedSymbol,
                s as usize,
                format!("symbol {s} is outside the symbol set"),
            );
        }
    }

    for &i in &declared {
        match positions.get(&i).map(Vec::as_slice) {
            Some([a, b]) => {
                if b - a != i as usize {
                    report.push(
                        ViolationKind::LinearGap,
                        i as usize,
                        format!("copies of {i} at positions {a} and {b} (gap {})", b - a),
                    );
                }
            }
            other => {
                let n = other.map_or(0, <[usize]>::len);
                report.push(
                    ViolationKind::SymbolCount,
                    i as usize,
                    format!("symbol {i} appears {n} times, expected 2"),
                );
            }
        }
    }

    report
}
