//! Rectangle algebra: the 169 ordered pairs of Allen relations applied
//! independently to the x- and y-extents of two boxes.

use serde::{Deserialize, Serialize};

use crate::algebra::allen::AllenRelation;
use crate::geom::Bbox;

/// Relation of box `a` to box `b`, one Allen relation per axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RectRelation {
    pub x: AllenRelation,
    pub y: AllenRelation,
}

impl std::fmt::Display for RectRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Less,
    Equal,
    Greater,
}

/// Trichotomy with tolerance: values within `tau` count as equal.
fn fuzzy_cmp(u: f64, v: f64, tau: f64) -> Cmp {
    if (u - v).abs() <= tau {
        Cmp::Equal
    } else if u < v {
        Cmp::Less
    } else {
        Cmp::Greater
    }
}

/// Classify two closed real extents `[a1, a2]` vs `[b1, b2]`.
///
/// Endpoint equality and adjacency use the tolerance `tau`. When `tau > 0`
/// can make several patterns match, ties resolve deterministically:
/// endpoint-equality relations first, then adjacency (`meets`/`met_by`),
/// then strict orderings.
pub fn classify_extent(a1: f64, a2: f64, b1: f64, b2: f64, tau: f64) -> AllenRelation {
    use AllenRelation::*;
    let c11 = fuzzy_cmp(a1, b1, tau);
    let c22 = fuzzy_cmp(a2, b2, tau);
    let c21 = fuzzy_cmp(a2, b1, tau);
    let c12 = fuzzy_cmp(a1, b2, tau);

    match (c11, c22) {
        (Cmp::Equal, Cmp::Equal) => return Equals,
        (Cmp::Equal, Cmp::Less) => return Starts,
        (Cmp::Equal, Cmp::Greater) => return StartedBy,
        (Cmp::Greater, Cmp::Equal) => return Finishes,
        (Cmp::Less, Cmp::Equal) => return FinishedBy,
        _ => {}
    }
    if c21 == Cmp::Equal {
        return Meets;
    }
    if c12 == Cmp::Equal {
        return MetBy;
    }
    if c21 == Cmp::Less {
        return Precedes;
    }
    if c12 == Cmp::Greater {
        return PrecededBy;
    }
    match (c11, c22) {
        (Cmp::Less, Cmp::Less) => Overlaps,
        (Cmp::Greater, Cmp::Greater) => OverlappedBy,
        (Cmp::Less, Cmp::Greater) => Contains,
        (Cmp::Greater, Cmp::Less) => During,
        _ => unreachable!("equality cases handled above"),
    }
}

/// Classify `a` against `b`, per axis, with coordinate tolerance `tau`.
pub fn rect_relation(a: &Bbox, b: &Bbox, tau: f64) -> RectRelation {
    RectRelation {
        x: classify_extent(a.xmin, a.xmax, b.xmin, b.xmax, tau),
        y: classify_extent(a.ymin, a.ymax, b.ymin, b.ymax, tau),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bb(x: f64, y: f64, x2: f64, y2: f64) -> Bbox {
        Bbox {
            xmin: x,
            ymin: y,
            xmax: x2,
            ymax: y2,
        }
    }

    #[test]
    fn disjoint_in_x_identical_y() {
        let r = rect_relation(&bb(0.0, 0.0, 10.0, 10.0), &bb(20.0, 0.0, 30.0, 10.0), 0.0);
        assert_eq!(r.x, AllenRelation::Precedes);
        assert_eq!(r.y, AllenRelation::Equals);
    }

    #[test]
    fn shared_edge_within_tau_is_meets() {
        let r = rect_relation(&bb(0.0, 0.0, 10.0, 10.0), &bb(10.0, 0.0, 20.0, 10.0), 0.5);
        assert_eq!(r.x, AllenRelation::Meets);
        assert_eq!(r.y, AllenRelation::Equals);
    }

    #[test]
    fn nested_box_is_contains_on_both_axes() {
        let r = rect_relation(&bb(0.0, 0.0, 10.0, 10.0), &bb(2.0, 2.0, 8.0, 8.0), 0.0);
        assert_eq!(r.x, AllenRelation::Contains);
        assert_eq!(r.y, AllenRelation::Contains);
    }

    #[test]
    fn equality_beats_adjacency() {
        // With tau = 1 both "equals" and "meets" patterns are within
        // tolerance for these touching unit-wide extents.
        assert_eq!(classify_extent(0.0, 1.0, 1.0, 2.0, 1.0), AllenRelation::Equals);
        // Outside the equality window, adjacency wins over strict order.
        assert_eq!(classify_extent(0.0, 10.0, 10.5, 20.0, 1.0), AllenRelation::Meets);
    }

    /// Real-interval brute force used as the tau = 0 oracle.
    fn brute_force_real(a1: f64, a2: f64, b1: f64, b2: f64) -> AllenRelation {
        use AllenRelation::*;
        if a2 < b1 {
            Precedes
        } else if a2 == b1 {
            Meets
        } else if b2 < a1 {
            PrecededBy
        } else if b2 == a1 {
            MetBy
        } else if a1 == b1 && a2 == b2 {
            Equals
        } else if a1 == b1 {
            if a2 < b2 {
                Starts
            } else {
                StartedBy
            }
        } else if a2 == b2 {
            if a1 < b1 {
                FinishedBy
            } else {
                Finishes
            }
        } else if a1 < b1 && b2 < a2 {
            Contains
        } else if b1 < a1 && a2 < b2 {
            During
        } else if a1 < b1 {
            Overlaps
        } else {
            OverlappedBy
        }
    }

    proptest! {
        /// With tau = 0 the per-axis classification matches a straight
        /// real-interval classifier, and exactly one of the 169 pairs holds.
        #[test]
        fn matches_real_interval_oracle(
            a1 in -50i32..50, aw in 0i32..40,
            b1 in -50i32..50, bw in 0i32..40,
            c1 in -50i32..50, ch in 0i32..40,
            d1 in -50i32..50, dh in 0i32..40,
        ) {
            let a = bb(a1 as f64, c1 as f64, (a1 + aw) as f64, (c1 + ch) as f64);
            let b = bb(b1 as f64, d1 as f64, (b1 + bw) as f64, (d1 + dh) as f64);
            let r = rect_relation(&a, &b, 0.0);
            prop_assert_eq!(r.x, brute_force_real(a.xmin, a.xmax, b.xmin, b.xmax));
            prop_assert_eq!(r.y, brute_force_real(a.ymin, a.ymax, b.ymin, b.ymax));
            // Converse symmetry carries over axis-wise.
            let rev = rect_relation(&b, &a, 0.0);
            prop_assert_eq!(rev.x, r.x.inverse());
            prop_assert_eq!(rev.y, r.y.inverse());
        }
    }
}
