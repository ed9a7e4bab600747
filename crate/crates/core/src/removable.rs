//! Removable edges: which cuts of a circle yield valid linear sequences.
//!
//! An edge of a circle is *removable* when cutting it and reading the
//! symbols off the resulting path gives a valid Skolem sequence. A circle
//! with `j` removable edges corresponds to exactly `2j` sequences (one per
//! cut direction), which is what ties the circle census to the sequence
//! census.
//!
//! Everything here takes a **valid** circle (see
//! [`validate_circle`](crate::circle::validate_circle)) and panics
//! otherwise.

use std::collections::BTreeSet;

use crate::circle::{cut, pairs_from_symbols, CircleLabeling, CutDirection, EdgeId, PairList};
use crate::sequence::{validate_sequence, SequenceKind, SkolemTypeSeq};

/// The set of removable edges of a circle.
pub type EdgeSet = BTreeSet<EdgeId>;

/// One bit per position: `1` survives, `0` means the position is strictly
/// inside the forward arc of some symbol `2..=m-1` and therefore cannot
/// start a linear reading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorMask {
    bits: Vec<bool>,
}

impl InteriorMask {
    /// The bit for 1-based position `p`.
    pub fn bit(&self, p: usize) -> bool {
        self.bits[p - 1]
    }

    /// Number of positions, `2m`.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The Hamming weight `w`: how many positions survive.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// 1-based positions whose bit is set, ascending.
    pub fn ones(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

fn pairs_or_panic(circle: &CircleLabeling) -> PairList {
    pairs_from_symbols(circle).expect("removable-edge analysis requires a valid Skolem circle")
}

/// The interior mask of a valid circle.
///
/// Starts all ones; for every symbol `i` with `2 <= i <= m-1`, the `i - 1`
/// positions strictly between `a_i` and `b_i` on the forward arc are
/// zeroed. The 1-pair has no interior, and symbol `m` imposes no
/// constraint (its two arcs have equal length, so a reading can always
/// cross it).
///
/// # Panics
///
/// If `circle` is not a valid Skolem circle.
pub fn interior_mask(circle: &CircleLabeling) -> InteriorMask {
    let pairs = pairs_or_panic(circle);
    mask_from_pairs(&pairs)
}

fn mask_from_pairs(pairs: &PairList) -> InteriorMask {
    let m = pairs.order();
    let two_m = 2 * m;
    let mut bits = vec![true; two_m];
    for (symbol, (a, _)) in pairs.iter() {
        let symbol = symbol as usize;
        if symbol < 2 || symbol == m {
            continue;
        }
        for k in 1..symbol {
            bits[(a - 1 + k) % two_m] = false;
        }
    }
    InteriorMask { bits }
}

/// The number `j` of removable edges, from the mask weight alone:
/// `j = ceil(w / 2)`.
///
/// # Panics
///
/// If `circle` is not a valid Skolem circle.
pub fn removable_count_weight(circle: &CircleLabeling) -> usize {
    interior_mask(circle).weight().div_ceil(2)
}

/// Ground truth by definition: every edge whose anticlockwise cut
/// validates as a Skolem sequence.
///
/// The edge spanned by the 1-pair is excluded; for `m >= 2` cutting it
/// separates the two 1s (never valid), and for the order-1 circle it would
/// wrongly count the same reading twice.
///
/// # Panics
///
/// If `circle` is not a valid Skolem circle.
pub fn removable_edges_oracle(circle: &CircleLabeling) -> EdgeSet {
    let pairs = pairs_or_panic(circle);
    let (a1, _) = pairs.get(1);
    let mut edges = EdgeSet::new();
    for p in 1..=circle.len() {
        let edge = EdgeId::new(p);
        if p == a1 {
            continue;
        }
        let reading = cut(circle, edge, CutDirection::Anticlockwise);
        if validate_sequence(&reading, &SequenceKind::Skolem).valid() {
            edges.insert(edge);
        }
    }
    edges
}

/// The removable edges from the interior mask: an edge survives exactly
/// when both of its endpoints do, minus the edge spanned by the 1-pair.
/// Agrees with [`removable_edges_oracle`] on every valid circle.
///
/// # Panics
///
/// If `circle` is not a valid Skolem circle.
pub fn removable_edges_fast(circle: &CircleLabeling) -> EdgeSet {
    let pairs = pairs_or_panic(circle);
    let mask = mask_from_pairs(&pairs);
    let two_m = mask.len();
    let (a1, _) = pairs.get(1);
    let mut edges = EdgeSet::new();
    for p in 1..=two_m {
        if p != a1 && mask.bit(p) && mask.bit(p % two_m + 1) {
            edges.insert(EdgeId::new(p));
        }
    }
    edges
}

/// Removable-edge analysis of one circle: the edge set, its size `j`, and
/// the mask weight `w` it was derived from. `w = 2j` or `w = 2j - 1` on
/// every valid circle (the surviving positions chain into runs whose
/// adjacent pairs are the removable edges).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovabilityReport {
    pub edges: EdgeSet,
    /// `j`, the number of removable edges.
    pub removable: usize,
    /// The interior-mask weight `w`.
    pub weight: usize,
}

/// Computes the [`RemovabilityReport`] of a valid circle.
///
/// # Panics
///
/// If `circle` is not a valid Skolem circle.
pub fn removability_report(circle: &CircleLabeling) -> RemovabilityReport {
    let pairs = pairs_or_panic(circle);
    let mask = mask_from_pairs(&pairs);
    let two_m = mask.len();
    let (a1, _) = pairs.get(1);
    let mut edges = EdgeSet::new();
    for p in 1..=two_m {
        if p != a1 && mask.bit(p) && mask.bit(p % two_m + 1) {
            edges.insert(EdgeId::new(p));
        }
    }
    let weight = mask.weight();
    let report = RemovabilityReport {
        removable: edges.len(),
        edges,
        weight,
    };
    debug_assert_eq!(report.removable, weight.div_ceil(2));
    report
}

/// The `2j` linear sequences of a circle: each removable edge cut in each
/// direction, edges ascending, anticlockwise before clockwise.
///
/// The entries are pairwise distinct for every valid circle of order
/// `>= 2`; the order-1 circle is degenerate (both cuts of its one
/// removable edge read the same).
///
/// # Panics
///
/// If `circle` is not a valid Skolem circle.
pub fn sequences_of_circle(circle: &CircleLabeling) -> Vec<SkolemTypeSeq> {
    let mut out = Vec::new();
    for edge in removable_edges_fast(circle) {
        out.push(cut(circle, edge, CutDirection::Anticlockwise));
        out.push(cut(circle, edge, CutDirection::Clockwise));
    }
    out
}
