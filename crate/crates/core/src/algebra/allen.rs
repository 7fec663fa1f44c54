//! Allen's interval algebra on discrete, 1-based, inclusive frame intervals.
//!
//! Discrete semantics: `meets(a, b)` holds iff `a.end + 1 == b.start`,
//! `equals` iff both endpoints coincide, and every other relation follows
//! the continuous reading of the half-open real intervals
//! `[start, end + 1)`. Exactly one relation holds for any ordered pair
//! (jointly exhaustive, pairwise disjoint).

use serde::{Deserialize, Serialize};

/// A 1-based inclusive frame interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FrameInterval {
    pub start: usize,
    pub end: usize,
}

impl FrameInterval {
    pub fn new(start: usize, end: usize) -> Self {
        assert!(
            start >= 1 && start <= end,
            "invalid frame interval [{start}, {end}]"
        );
        FrameInterval { start, end }
    }

    /// Number of frames covered.
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false // start <= end by construction
    }

    pub fn contains(&self, frame: usize) -> bool {
        self.start <= frame && frame <= self.end
    }

    /// Closed intervals share at least one frame.
    pub fn overlaps(&self, other: &FrameInterval) -> bool {
        self.start <= other.end && other.start <= self.end
    }
}

impl std::fmt::Display for FrameInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// The 13 Allen interval relations, in the conventional order from
/// "entirely before" to "entirely after".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AllenRelation {
    Precedes,
    Meets,
    Overlaps,
    FinishedBy,
    Contains,
    Starts,
    Equals,
    StartedBy,
    During,
    Finishes,
    OverlappedBy,
    MetBy,
    PrecededBy,
}

pub const ALL_RELATIONS: [AllenRelation; 13] = [
    AllenRelation::Precedes,
    AllenRelation::Meets,
    AllenRelation::Overlaps,
    AllenRelation::FinishedBy,
    AllenRelation::Contains,
    AllenRelation::Starts,
    AllenRelation::Equals,
    AllenRelation::StartedBy,
    AllenRelation::During,
    AllenRelation::Finishes,
    AllenRelation::OverlappedBy,
    AllenRelation::MetBy,
    AllenRelation::PrecededBy,
];

impl AllenRelation {
    pub fn name(&self) -> &'static str {
        match self {
            AllenRelation::Precedes => "precedes",
            AllenRelation::Meets => "meets",
            AllenRelation::Overlaps => "overlaps",
            AllenRelation::FinishedBy => "finished_by",
            AllenRelation::Contains => "contains",
            AllenRelation::Starts => "starts",
            AllenRelation::Equals => "equals",
            AllenRelation::StartedBy => "started_by",
            AllenRelation::During => "during",
            AllenRelation::Finishes => "finishes",
            AllenRelation::OverlappedBy => "overlapped_by",
            AllenRelation::MetBy => "met_by",
            AllenRelation::PrecededBy => "preceded_by",
        }
    }

    pub fn from_name(s: &str) -> Option<AllenRelation> {
        ALL_RELATIONS.iter().copied().find(|r| r.name() == s)
    }

    /// The converse relation: `allen(a, b).inverse() == allen(b, a)`.
    pub fn inverse(&self) -> AllenRelation {
        match self {
            AllenRelation::Precedes => AllenRelation::PrecededBy,
            AllenRelation::Meets => AllenRelation::MetBy,
            AllenRelation::Overlaps => AllenRelation::OverlappedBy,
            AllenRelation::FinishedBy => AllenRelation::Finishes,
            AllenRelation::Contains => AllenRelation::During,
            AllenRelation::Starts => AllenRelation::StartedBy,
            AllenRelation::Equals => AllenRelation::Equals,
            AllenRelation::StartedBy => AllenRelation::Starts,
            AllenRelation::During => AllenRelation::Contains,
            AllenRelation::Finishes => AllenRelation::FinishedBy,
            AllenRelation::OverlappedBy => AllenRelation::Overlaps,
            AllenRelation::MetBy => AllenRelation::Meets,
            AllenRelation::PrecededBy => AllenRelation::Precedes,
        }
    }
}

impl std::fmt::Display for AllenRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Classify the relation of `a` to `b`.
pub fn allen(a: &FrameInterval, b: &FrameInterval) -> AllenRelation {
    // Compare on the half-open real embedding [start, end + 1).
    let (a1, a2) = (a.start as i64, a.end as i64 + 1);
    let (b1, b2) = (b.start as i64, b.end as i64 + 1);
    use AllenRelation::*;
    use std::cmp::Ordering::*;
    match (a1.cmp(&b1), a2.cmp(&b2)) {
        (Equal, Equal) => Equals,
        (Equal, Less) => Starts,
        (Equal, Greater) => StartedBy,
        (Greater, Equal) => Finishes,
        (Less, Equal) => FinishedBy,
        (Less, Greater) => Contains,
        (Greater, Less) => During,
        (Less, Less) => match a2.cmp(&b1) {
            Less => Precedes,
            Equal => Meets,
            Greater => Overlaps,
        },
        (Greater, Greater) => match b2.cmp(&a1) {
            Less => PrecededBy,
            Equal => MetBy,
            Greater => OverlappedBy,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(s: usize, e: usize) -> FrameInterval {
        FrameInterval::new(s, e)
    }

    /// Independent brute-force classifier: tests each of the 13 relation
    /// definitions directly on half-open endpoints, in order, and returns
    /// all matches.
    fn brute_force(a: &FrameInterval, b: &FrameInterval) -> Vec<AllenRelation> {
        let (a1, a2) = (a.start as i64, a.end as i64 + 1);
        let (b1, b2) = (b.start as i64, b.end as i64 + 1);
        use AllenRelation::*;
        let defs: [(AllenRelation, bool); 13] = [
            (Precedes, a2 < b1),
            (Meets, a2 == b1),
            (Overlaps, a1 < b1 && b1 < a2 && a2 < b2),
            (FinishedBy, a1 < b1 && a2 == b2),
            (Contains, a1 < b1 && b2 < a2),
            (Starts, a1 == b1 && a2 < b2),
            (Equals, a1 == b1 && a2 == b2),
            (StartedBy, a1 == b1 && b2 < a2),
            (During, b1 < a1 && a2 < b2),
            (Finishes, b1 < a1 && a2 == b2),
            (OverlappedBy, b1 < a1 && a1 < b2 && b2 < a2),
            (MetBy, b2 == a1),
            (PrecededBy, b2 < a1),
        ];
        defs.iter().filter(|(_, m)| *m).map(|(r, _)| *r).collect()
    }

    #[test]
    fn sequential_adjacency_is_meets() {
        assert_eq!(allen(&iv(1, 60), &iv(61, 120)), AllenRelation::Meets);
    }

    #[test]
    fn identical_intervals_are_equal() {
        assert_eq!(allen(&iv(1, 120), &iv(1, 120)), AllenRelation::Equals);
    }

    #[test]
    fn partial_overlap() {
        assert_eq!(allen(&iv(10, 50), &iv(30, 90)), AllenRelation::Overlaps);
        assert_eq!(brute_force(&iv(10, 50), &iv(30, 90)), vec![AllenRelation::Overlaps]);
    }

    #[test]
    fn single_frame_intervals() {
        assert_eq!(allen(&iv(5, 5), &iv(5, 5)), AllenRelation::Equals);
        assert_eq!(allen(&iv(5, 5), &iv(6, 6)), AllenRelation::Meets);
        assert_eq!(allen(&iv(5, 5), &iv(7, 9)), AllenRelation::Precedes);
        assert_eq!(allen(&iv(5, 5), &iv(5, 9)), AllenRelation::Starts);
    }

    proptest! {
        /// JEPD: the brute-force classifier finds exactly one matching
        /// relation, and it is the one `allen` returns; inverses agree with
        /// the standard table.
        #[test]
        fn jepd_and_inverse(s1 in 1usize..200, l1 in 0usize..100, s2 in 1usize..200, l2 in 0usize..100) {
            let a = iv(s1, s1 + l1);
            let b = iv(s2, s2 + l2);
            let matches = brute_force(&a, &b);
            prop_assert_eq!(matches.len(), 1);
            let rel = allen(&a, &b);
            prop_assert_eq!(matches[0], rel);
            prop_assert_eq!(allen(&b, &a), rel.inverse());
        }
    }
}
