//! Constructive families and growth bounds.
//!
//! Two building blocks combine into circles with many removable edges:
//! a direct Langford construction at each power-of-three order, and a
//! gluing step that chains sequences over disjoint symbol sets around a
//! cycle. Each junction between consecutive parts stays removable, so a
//! `k`-part chain certifies at least `k` removable edges.

use num_bigint::BigUint;
use thiserror::Error;

use crate::circle::CircleLabeling;
use crate::sequence::{validate_sequence, SequenceKind, SkolemTypeSeq};

/// Whether a Skolem sequence of order `m` exists: `m ≡ 0, 1 (mod 4)`.
pub fn skolem_order_exists(m: usize) -> bool {
    m >= 1 && matches!(m % 4, 0 | 1)
}

/// Whether a Skolem circle of order `m` exists.
///
/// The positions of a circle force the same parity condition as the linear
/// case, and wrapping any Skolem sequence realizes it, so the answer
/// coincides with [`skolem_order_exists`].
pub fn skolem_labeled_cycle_exists(m: usize) -> bool {
    skolem_order_exists(m)
}

/// Whether a Langford sequence with defect `d` and order `m` (symbol set
/// `{d..=d+m-1}`) exists: `m >= 2d - 1`, with `m ≡ 0, 1 (mod 4)` for odd
/// `d` and `m ≡ 0, 3 (mod 4)` for even `d`.
pub fn langford_exists(defect: u32, order: usize) -> bool {
    if defect == 0 || order + 1 < 2 * defect as usize {
        return false;
    }
    if defect % 2 == 1 {
        matches!(order % 4, 0 | 1)
    } else {
        matches!(order % 4, 0 | 3)
    }
}

/// The Langford sequence of order `m = 3^n` and defect `d = (3^n + 1) / 2`.
///
/// Two interleaved runs tile the `2m` cells: for `y ∈ [0, d-1]` the symbol
/// `d + m - 1 - 2y` occupies cells `(y + 1, m + d - y)`, and for
/// `z ∈ [1, d-1]` the symbol `d + m - 2z` occupies cells
/// `(d + z, 2m - z + 1)`. Both runs satisfy their gap identity by
/// construction, which is asserted per symbol, and the result is checked
/// against the Langford validator before it is returned.
pub fn langford_power3(n: u32) -> SkolemTypeSeq {
    assert!(n <= 16, "order 3^{n} is out of practical range");
    let m = 3usize.pow(n);
    let d = m.div_ceil(2);
    let mut symbols = vec![0u32; 2 * m];
    let mut place = |symbol: usize, a: usize, b: usize| {
        assert_eq!(b - a, symbol, "gap identity fails for symbol {symbol}");
        assert_eq!(symbols[a - 1], 0, "cell {a} written twice");
        assert_eq!(symbols[b - 1], 0, "cell {b} written twice");
        symbols[a - 1] = symbol as u32;
        symbols[b - 1] = symbol as u32;
    };
    for y in 0..d {
        place(d + m - 1 - 2 * y, y + 1, m + d - y);
    }
    for z in 1..d {
        place(d + m - 2 * z, d + z, 2 * m - z + 1);
    }
    let seq = SkolemTypeSeq::new(symbols);
    let report = validate_sequence(&seq, &SequenceKind::Langford { defect: d as u32 });
    assert!(
        report.valid(),
        "construction produced an invalid Langford sequence:\n{report}"
    );
    seq
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GlueError {
    #[error("nothing to glue")]
    NoParts,
    #[error("part {index} is not a valid Skolem-type sequence:\n{report}")]
    InvalidPart {
        index: usize,
        report: crate::report::ValidationReport,
    },
    #[error("symbol {symbol} occurs in more than one part")]
    DuplicateSymbol { symbol: u32 },
    #[error("the symbol sets do not cover 1..={order}: {symbol} is missing")]
    Coverage { order: usize, symbol: u32 },
}

/// Concatenates Skolem-type sequences over pairwise disjoint symbol sets
/// around a cycle.
///
/// The union of the symbol sets must be exactly `{1..=m}` for some `m`;
/// the result is then a valid circle of order `m` (a linear gap of
/// `i <= m` is automatically the shorter arc). Every junction edge between
/// two consecutive parts — including the one closing the cycle — can be
/// cut again, so the output has at least as many removable edges as there
/// are parts.
pub fn glue(parts: &[SkolemTypeSeq]) -> Result<CircleLabeling, GlueError> {
    if parts.is_empty() {
        return Err(GlueError::NoParts);
    }
    let mut symbols = Vec::new();
    for (index, part) in parts.iter().enumerate() {
        let report = validate_sequence(part, &SequenceKind::SkolemType { symbols: None });
        if !report.valid() {
            return Err(GlueError::InvalidPart { index, report });
        }
        symbols.extend_from_slice(part.symbols());
    }
    let order = symbols.len() / 2;
    let mut seen = vec![0usize; order + 1];
    for &s in &symbols {
        if s as usize > order {
            // Some smaller symbol must then be missing; report that one.
            continue;
        }
        seen[s as usize] += 1;
    }
    for (i, &count) in seen.iter().enumerate().skip(1) {
        if count > 2 {
            return Err(GlueError::DuplicateSymbol { symbol: i as u32 });
        }
        if count == 0 {
            return Err(GlueError::Coverage {
                order,
                symbol: i as u32,
            });
        }
    }
    let circle = CircleLabeling::new(symbols).expect("parts have even total length");
    debug_assert!(crate::circle::validate_circle(&circle).valid());
    Ok(circle)
}

/// The chained power-of-three circle: glues `langford_power3(0..k)`.
///
/// The parts' symbol sets `{(3^n+1)/2 ..= (3^(n+1)-1)/2}` tile
/// `{1..=(3^k-1)/2}` exactly, so this yields a valid circle of order
/// `(3^k - 1) / 2` with at least `k` removable edges — an unbounded family
/// whose removable count grows with `k` while the order grows only
/// exponentially in it.
pub fn langford_chain_circle(k: u32) -> CircleLabeling {
    assert!(k >= 1, "a chain needs at least one part");
    let parts: Vec<SkolemTypeSeq> = (0..k).map(langford_power3).collect();
    glue(&parts).expect("power-of-three Langford parts tile the symbol range")
}

/// Closed-form growth bounds at order `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsSummary {
    pub order: usize,
    /// No circle of order `m` has more than `2 + log2(m)` removable edges.
    pub max_removable_bound: f64,
    /// At least `2^(floor(m/3)-1) / (2 + log2 m) + 1` inequivalent circles
    /// exist when any do.
    pub circle_lower_bound: f64,
    /// At least `2^floor(m/3)` Skolem sequences exist when any do.
    pub sequence_lower_bound: BigUint,
    /// A counting ceiling on sequences: `2 · prod_{i=1}^{m-2} (2m - i)`.
    pub naive_sequence_upper_bound: BigUint,
    /// A counting ceiling on circles, `2(m-2)(2m-2)^(m-5)`, defined for
    /// `m >= 5`.
    pub naive_circle_upper_bound: Option<BigUint>,
}

/// Evaluates every bound at order `m >= 1`.
pub fn bounds(m: usize) -> BoundsSummary {
    assert!(m >= 1);
    let log2_m = (m as f64).log2();
    let third = m / 3;
    let circle_lower = 2f64.powi(third as i32 - 1) / (2.0 + log2_m) + 1.0;
    let mut naive_seq = BigUint::from(2u32);
    for i in 1..=m.saturating_sub(2) {
        naive_seq *= BigUint::from(2 * m - i);
    }
    let naive_circle =
        (m >= 5).then(|| BigUint::from(2 * (m - 2)) * BigUint::from(2 * m - 2).pow(m as u32 - 5));
    BoundsSummary {
        order: m,
        max_removable_bound: 2.0 + log2_m,
        circle_lower_bound: circle_lower,
        sequence_lower_bound: BigUint::from(2u32).pow(third as u32),
        naive_sequence_upper_bound: naive_seq,
        naive_circle_upper_bound: naive_circle,
    }
}
