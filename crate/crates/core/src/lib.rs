//! Skolem sequences, Langford sequences and Skolem circles.
//!
//! A *Skolem sequence* of order `m` arranges the symbols `1..=m`, each used
//! twice, in `2m` cells so that the two copies of `i` sit exactly `i` cells
//! apart. A *Skolem circle* is the cyclic analogue: a labeling of the cycle
//! graph on `2m` nodes in which the two copies of `i` lie at cycle distance
//! `i` (equivalently, the pair positions satisfy `b - a ≡ i (mod 2m)`).
//!
//! The crate provides:
//!
//! * domain types, parsing and validators ([`circle`], [`sequence`], [`text`]);
//! * canonical forms under rotation and reflection ([`canonical`]);
//! * removable-edge analysis linking circles back to linear sequences
//!   ([`removable`]);
//! * constructive families and growth bounds ([`constructions`]);
//! * exhaustive, shardable enumeration and classification ([`enumeration`]);
//! * deterministic text formats for catalogs and count tables ([`catalog`]).

pub mod canonical;
pub mod catalog;
pub mod circle;
pub mod constructions;
pub mod enumeration;
pub mod removable;
pub mod report;
pub mod sequence;
pub mod text;

pub use circle::{
    cut, pairs_from_symbols, symbols_from_pairs, validate_circle, wrap, CircleLabeling,
    CutDirection, EdgeId, PairList,
};
pub use report::{ValidationReport, Violation, ViolationKind};
pub use sequence::{validate_sequence, SequenceKind, SkolemTypeSeq};
