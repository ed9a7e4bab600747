//! Skolem circles: labelings of the cycle graph, pair-position form, and
//! the wrap/cut conversions to and from linear sequences.
//!
//! Positions on a circle of order `m` are `1..=2m`, increasing
//! anticlockwise. Edge `e_p` joins position `p` to position `p mod 2m + 1`.

use std::fmt;

use thiserror::Error;

use crate::report::{ValidationReport, ViolationKind};
use crate::sequence::{validate_sequence, SequenceKind, SkolemTypeSeq};
use crate::text::format_symbol_list;

/// A labeling of the cycle on `2m` nodes by symbols, one per node.
///
/// The constructor enforces only the shape (even, non-empty length);
/// use [`validate_circle`] for the labeling rules.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircleLabeling {
    symbols: Vec<u32>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircleShapeError {
    #[error("a circle labeling cannot be empty")]
    Empty,
    #[error("a circle labeling needs an even number of entries, got {0}")]
    OddLength(usize),
}

impl CircleLabeling {
    pub fn new(symbols: Vec<u32>) -> Result<Self, CircleShapeError> {
        if symbols.is_empty() {
            return Err(CircleShapeError::Empty);
        }
        if !symbols.len().is_multiple_of(2) {
            return Err(CircleShapeError::OddLength(symbols.len()));
        }
        Ok(CircleLabeling { symbols })
    }

    /// The order `m`; the cycle has `2m` nodes.
    pub fn order(&self) -> usize {
        self.symbols.len() / 2
    }

    /// Number of nodes, `2m`.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u32> {
        self.symbols
    }

    /// The symbol at 1-based position `p`.
    pub fn symbol_at(&self, p: usize) -> u32 {
        self.symbols[p - 1]
    }
}

impl fmt::Display for CircleLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_symbol_list(&self.symbols))
    }
}

/// Cycle edge `e_p`, joining positions `p` and `p mod 2m + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(usize);

impl EdgeId {
    /// `p` must be at least 1; the upper bound `2m` depends on the circle
    /// the edge is used with.
    pub fn new(p: usize) -> Self {
        assert!(p >= 1, "edge indices are 1-based");
        EdgeId(p)
    }

    pub fn index(self) -> usize {
        self.0
    }

    /// The two endpoint positions on a cycle with `two_m` nodes.
    pub fn endpoints(self, two_m: usize) -> (usize, usize) {
        (self.0, self.0 % two_m + 1)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// The pair-position form of a circle: for each symbol `i`, the ordered
/// positions `(a_i, b_i)` with `b_i - a_i ≡ i (mod 2m)`.
///
/// For `i = m` both orderings satisfy the congruence; `a_m < b_m` is the
/// tie-break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairList {
    /// `pairs[i - 1]` is `(a_i, b_i)`.
    pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairListError {
    #[error("empty pair list")]
    Empty,
    #[error("symbol {symbol}: position {position} is outside 1..={len}")]
    PositionRange {
        symbol: u32,
        position: usize,
        len: usize,
    },
    #[error("symbol {symbol}: neither ordering of ({a}, {b}) satisfies the congruence")]
    Congruence { symbol: u32, a: usize, b: usize },
    #[error("position {position} is used by more than one pair")]
    Overlap { position: usize },
}

impl PairList {
    /// Builds the pair list for `pairs[i - 1] = (a_i, b_i)`, normalizing
    /// each pair so the congruence (and the `i = m` tie-break) holds.
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self, PairListError> {
        if pairs.is_empty() {
            return Err(PairListError::Empty);
        }
        let m = pairs.len();
        let two_m = 2 * m;
        let mut normalized = Vec::with_capacity(m);
        let mut used = vec![false; two_m];
        for (idx, &(a, b)) in pairs.iter().enumerate() {
            let symbol = (idx + 1) as u32;
            for p in [a, b] {
                if p < 1 || p > two_m {
                    return Err(PairListError::PositionRange {
                        symbol,
                        position: p,
                        len: two_m,
                    });
                }
            }
            let gap = symbol as usize;
            let (a, b) = if (b + two_m - a) % two_m == gap && !(gap == m && a > b) {
                (a, b)
            } else if (a + two_m - b) % two_m == gap && !(gap == m && b > a) {
                (b, a)
            } else {
                return Err(PairListError::Congruence { symbol, a, b });
            };
            for p in [a, b] {
                if used[p - 1] {
                    return Err(PairListError::Overlap { position: p });
                }
                used[p - 1] = true;
            }
            normalized.push((a, b));
        }
        Ok(PairList { pairs: normalized })
    }

    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    /// `(a_i, b_i)` for symbol `i`.
    pub fn get(&self, symbol: u32) -> (usize, usize) {
        self.pairs[symbol as usize - 1]
    }

    /// Iterates `(symbol, (a, b))` in symbol order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, (usize, usize))> + '_ {
        self.pairs
            .iter()
            .enumerate()
            .map(|(i, &p)| ((i + 1) as u32, p))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairingError {
    #[error("position {position}: symbol {value} is outside 1..={order}")]
    SymbolOutOfRange {
        value: u32,
        position: usize,
        order: usize,
    },
    #[error("symbol {symbol} appears {count} times, expected 2")]
    SymbolCount { symbol: u32, count: usize },
    #[error("symbol {symbol}: positions {p} and {q} are not at cycle distance {symbol}")]
    Distance { symbol: u32, p: usize, q: usize },
}

/// Derives the pair-position form of a circle labeling.
///
/// Succeeds exactly when the labeling is a valid Skolem circle: every
/// symbol `1..=m` appears twice, with its two copies at cycle distance
/// equal to the symbol.
pub fn pairs_from_symbols(circle: &CircleLabeling) -> Result<PairList, PairingError> {
    let m = circle.order();
    let two_m = circle.len();
    let mut where_seen: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, &s) in circle.symbols().iter().enumerate() {
        if s < 1 || s as usize > m {
            return Err(PairingError::SymbolOutOfRange {
                value: s,
                position: i + 1,
                order: m,
            });
        }
        where_seen[s as usize - 1].push(i + 1);
    }
    let mut pairs = Vec::with_capacity(m);
    for (idx, ps) in where_seen.iter().enumerate() {
        let symbol = (idx + 1) as u32;
        let &[p, q] = ps.as_slice() else {
            return Err(PairingError::SymbolCount {
                symbol,
                count: ps.len(),
            });
        };
        let gap = symbol as usize;
        // p < q by construction. The anticlockwise orientation: symbol m
        // always takes (p, q) by the tie-break, every other symbol takes
        // whichever start makes the forward arc have length `symbol`.
        if q - p == gap {
            pairs.push((p, q));
        } else if gap != m && two_m - (q - p) == gap {
            pairs.push((q, p));
        } else {
            return Err(PairingError::Distance { symbol, p, q });
        }
    }
    Ok(PairList { pairs })
}

/// Rebuilds the symbols-around-the-cycle form from a pair list.
pub fn symbols_from_pairs(pairs: &PairList) -> CircleLabeling {
    let two_m = 2 * pairs.order();
    let mut symbols = vec![0u32; two_m];
    for (symbol, (a, b)) in pairs.iter() {
        symbols[a - 1] = symbol;
        symbols[b - 1] = symbol;
    }
    CircleLabeling { symbols }
}

/// Checks the Skolem circle rules and reports every violation: each symbol
/// `1..=m` exactly twice, copies at cycle distance equal to the symbol.
pub fn validate_circle(circle: &CircleLabeling) -> ValidationReport {
    let mut report = ValidationReport::default();
    let m = circle.order();
    let two_m = circle.len();
    let mut where_seen: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, &s) in circle.symbols().iter().enumerate() {
        if s < 1 || s as usize > m {
            report.push(
                ViolationKind::SymbolOutOfRange,
                i + 1,
                format!("entry {s} at position {} is outside 1..={m}", i + 1),
            );
        } else {
            where_seen[s as usize - 1].push(i + 1);
        }
    }
    for (idx, ps) in where_seen.iter().enumerate() {
        let symbol = idx + 1;
        match ps.as_slice() {
            [p, q] => {
                let arc = q - p;
                let distance = arc.min(two_m - arc);
                if distance != symbol {
                    report.push(
                        ViolationKind::CycleDistance,
                        symbol,
                        format!(
                            "copies of {symbol} at positions {p} and {q} \
                             (cycle distance {distance})"
                        ),
                    );
                }
            }
            other => {
                report.push(
                    ViolationKind::SymbolCount,
                    symbol,
                    format!("symbol {symbol} appears {} times, expected 2", other.len()),
                );
            }
        }
    }
    report
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WrapError {
    #[error("not a valid Skolem sequence:\n{0}")]
    InvalidSequence(ValidationReport),
}

/// Joins the two ends of a Skolem sequence into a circle: cell `k` becomes
/// position `k`.
///
/// Every valid Skolem sequence wraps to a valid circle (a linear gap of `i`
/// is in particular a cycle distance of `i`, since `i <= m`).
pub fn wrap(seq: &SkolemTypeSeq) -> Result<CircleLabeling, WrapError> {
    let report = validate_sequence(seq, &SequenceKind::Skolem);
    if !report.valid() {
        return Err(WrapError::InvalidSequence(report));
    }
    Ok(CircleLabeling {
        symbols: seq.symbols().to_vec(),
    })
}

/// Reading direction after cutting an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutDirection {
    /// Start just past the cut edge and read by increasing position.
    Anticlockwise,
    /// Start just before the cut edge and read by decreasing position.
    Clockwise,
}

/// Cuts edge `e_p` and reads the `2m` symbols off the resulting path.
///
/// Anticlockwise starts at position `p + 1` and ends at `p`; clockwise is
/// the reversal, starting at `p` and ending at `p + 1`. The result is a
/// linear arrangement that may or may not be a valid Skolem sequence;
/// validate it to find out.
///
/// # Panics
///
/// If the edge index exceeds `2m`.
pub fn cut(circle: &CircleLabeling, edge: EdgeId, direction: CutDirection) -> SkolemTypeSeq {
    let two_m = circle.len();
    let p = edge.index();
    assert!(p <= two_m, "edge {edge} does not exist on a {two_m}-cycle");
    let start = match direction {
        CutDirection::Anticlockwise => p % two_m, // 0-based index of position p+1
        CutDirection::Clockwise => p - 1,
    };
    let mut symbols = Vec::with_capacity(two_m);
    for k in 0..two_m {
        let idx = match direction {
            CutDirection::Anticlockwise => (start + k) % two_m,
            CutDirection::Clockwise => (start + two_m - k) % two_m,
        };
        symbols.push(circle.symbols[idx]);
    }
    SkolemTypeSeq::new(symbols)
}
