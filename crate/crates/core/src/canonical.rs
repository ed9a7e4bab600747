//! Rotation, reflection, and the canonical (standard) labeling of a circle.
//!
//! Two circles are equivalent when one is a rotation or reflection of the
//! other. Every valid circle of order `m >= 2` has exactly one image among
//! its `4m` dihedral images in *standard* form — 1-pair on positions
//! `(1, 2)` and `3 <= a_2 <= m` — which serves as the canonical
//! representative of its class.

use std::fmt;

use thiserror::Error;

use crate::circle::{pairs_from_symbols, validate_circle, CircleLabeling};

/// Rotates anticlockwise by `x` positions: the symbol at position `p`
/// moves to position `p + x (mod 2m)`. `x` is taken mod `2m`.
pub fn rotate(circle: &CircleLabeling, x: usize) -> CircleLabeling {
    let two_m = circle.len();
    let x = x % two_m;
    let symbols = circle.symbols();
    let mut out = Vec::with_capacity(two_m);
    for q in 0..two_m {
        out.push(symbols[(q + two_m - x) % two_m]);
    }
    CircleLabeling::new(out).expect("rotation preserves shape")
}

/// Reflects across the axis through position 1: position `p` maps to
/// `2m + 2 - p (mod 2m)`, fixing positions `1` and `m + 1`.
pub fn reflect(circle: &CircleLabeling) -> CircleLabeling {
    let two_m = circle.len();
    let symbols = circle.symbols();
    let mut out = Vec::with_capacity(two_m);
    for q in 0..two_m {
        out.push(symbols[(two_m - q) % two_m]);
    }
    CircleLabeling::new(out).expect("reflection preserves shape")
}

/// All `4m` dihedral images: the rotations of the circle followed by the
/// rotations of its reflection. Symmetric circles repeat some images.
pub fn dihedral_images(circle: &CircleLabeling) -> Vec<CircleLabeling> {
    let two_m = circle.len();
    let mut out = Vec::with_capacity(2 * two_m);
    let reflected = reflect(circle);
    for base in [circle, &reflected] {
        for x in 0..two_m {
            out.push(rotate(base, x));
        }
    }
    out
}

/// Whether a valid circle carries the standard positional labeling:
/// `(a_1, b_1) = (1, 2)` and, for `m >= 2`, `3 <= a_2 <= m`.
///
/// Returns `false` for labelings that are not valid circles.
pub fn is_standard(circle: &CircleLabeling) -> bool {
    if circle.symbol_at(1) != 1 || circle.symbol_at(2) != 1 {
        return false;
    }
    let Ok(pairs) = pairs_from_symbols(circle) else {
        return false;
    };
    if pairs.order() == 1 {
        return true;
    }
    let (a2, _) = pairs.get(2);
    (3..=pairs.order()).contains(&a2)
}

/// A circle known to be in standard form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCircle(CircleLabeling);

impl CanonicalCircle {
    pub fn circle(&self) -> &CircleLabeling {
        &self.0
    }

    pub fn into_inner(self) -> CircleLabeling {
        self.0
    }
}

impl fmt::Display for CanonicalCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonicalizeError {
    /// Order 1 admits no `a_2` constraint; both dihedral images of `(1, 1)`
    /// coincide and the standard form is not defined.
    #[error("canonical form requires order >= 2, got {order}")]
    DegenerateOrder { order: usize },
    #[error("not a valid Skolem circle")]
    InvalidCircle,
}

/// The unique standard-form image of a valid circle of order `m >= 2`.
pub fn canonicalize(circle: &CircleLabeling) -> Result<CanonicalCircle, CanonicalizeError> {
    let m = circle.order();
    if m < 2 {
        return Err(CanonicalizeError::DegenerateOrder { order: m });
    }
    if !validate_circle(circle).valid() {
        return Err(CanonicalizeError::InvalidCircle);
    }
    let mut found: Option<CircleLabeling> = None;
    for image in dihedral_images(circle) {
        if is_standard(&image) {
            match &found {
                None => found = Some(image),
                // A symmetric circle can reach its standard image through
                // two different transforms; two *distinct* standard images
                // would contradict canonical uniqueness.
                Some(prev) => {
                    assert_eq!(prev, &image, "two distinct standard images of one circle")
                }
            }
        }
    }
    let inner = found.expect("every valid circle of order >= 2 has a standard image");
    Ok(CanonicalCircle(inner))
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot compare circles of orders {left} and {right}")]
pub struct OrderMismatch {
    pub left: usize,
    pub right: usize,
}

/// Whether two circles of equal order are rotations or reflections of one
/// another. Decided directly from the dihedral orbit, independently of
/// [`canonicalize`].
pub fn equivalent(c1: &CircleLabeling, c2: &CircleLabeling) -> Result<bool, OrderMismatch> {
    if c1.order() != c2.order() {
        return Err(OrderMismatch {
            left: c1.order(),
            right: c2.order(),
        });
    }
    Ok(dihedral_images(c1).iter().any(|image| image == c2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(symbols: &[u32]) -> CircleLabeling {
        CircleLabeling::new(symbols.to_vec()).unwrap()
    }

    const ORDER4: [u32; 8] = [1, 1, 4, 2, 3, 2, 4, 3];

    #[test]
    fn rotate_moves_symbols_forward() {
        assert_eq!(
            rotate(&circle(&ORDER4), 2).symbols(),
            &[4, 3, 1, 1, 4, 2, 3, 2]
        );
        assert_eq!(rotate(&circle(&ORDER4), 0).symbols(), &ORDER4);
        assert_eq!(rotate(&circle(&ORDER4), 8).symbols(), &ORDER4);
    }

    #[test]
    fn rotate_composes_to_identity() {
        let c = circle(&[1, 1, 5, 2, 4, 2, 3, 5, 4, 3]);
        for x in 0..10 {
            assert_eq!(rotate(&rotate(&c, x), 10 - x), c);
        }
    }

    #[test]
    fn reflect_fixes_position_1() {
        assert_eq!(
            reflect(&circle(&ORDER4)).symbols(),
            &[1, 3, 4, 2, 3, 2, 4, 1]
        );
        assert_eq!(reflect(&circle(&[1, 1])).symbols(), &[1, 1]);
    }

    #[test]
    fn reflect_is_an_involution() {
        let c = circle(&[1, 1, 5, 4, 2, 3, 2, 5, 3, 4]);
        assert_eq!(reflect(&reflect(&c)), c);
    }

    #[test]
    fn standard_form_detection() {
        assert!(is_standard(&circle(&ORDER4)));
        assert!(is_standard(&circle(&[1, 1])));
        // 1-pair not on (1, 2).
        assert!(!is_standard(&circle(&[4, 2, 3, 2, 4, 3, 1, 1])));
        // 1-pair on (1, 2) but a_2 = 5 > m = 4.
        assert!(!is_standard(&circle(&[1, 1, 3, 4, 2, 3, 2, 4])));
        // Not a valid circle at all.
        assert!(!is_standard(&circle(&[1, 1, 2, 2])));
    }

    #[test]
    fn canonicalize_picks_the_standard_image() {
        let expected = circle(&ORDER4);
        for start in [
            [4u32, 2, 3, 2, 4, 3, 1, 1], // a rotation
            [1, 1, 3, 4, 2, 3, 2, 4],    // a reflection
        ] {
            let canon = canonicalize(&circle(&start)).unwrap();
            assert_eq!(canon.circle(), &expected);
        }
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let c = circle(&[1, 1, 5, 2, 4, 2, 3, 5, 4, 3]);
        let once = canonicalize(&c).unwrap();
        let twice = canonicalize(once.circle()).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn canonicalize_rejects_degenerate_and_invalid() {
        assert_eq!(
            canonicalize(&circle(&[1, 1])),
            Err(CanonicalizeError::DegenerateOrder { order: 1 })
        );
        assert_eq!(
            canonicalize(&circle(&[1, 1, 2, 2])),
            Err(CanonicalizeError::InvalidCircle)
        );
    }

    #[test]
    fn equivalence_within_and_across_classes() {
        let a = circle(&[1, 1, 5, 2, 4, 2, 3, 5, 4, 3]);
        let b = circle(&[1, 1, 5, 4, 2, 3, 2, 5, 3, 4]);
        // A clockwise reading of `a` starting elsewhere.
        let a_image = circle(&[3, 4, 5, 3, 2, 4, 2, 5, 1, 1]);
        assert!(equivalent(&a, &a_image).unwrap());
        assert!(equivalent(&a, &a).unwrap());
        assert!(!equivalent(&a, &b).unwrap());
        assert_eq!(
            equivalent(&a, &circle(&ORDER4)),
            Err(OrderMismatch { left: 5, right: 4 })
        );
    }

    #[test]
    fn dihedral_images_count() {
        assert_eq!(dihedral_images(&circle(&ORDER4)).len(), 16);
    }
}
