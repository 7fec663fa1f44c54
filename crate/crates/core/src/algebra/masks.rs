//! Named aggregation masks over the low-level algebra relations.
//!
//! Aggregated predicates are data, not code: every name the DSL exposes
//! (`before`, `while`, `top_border`, ...) resolves to a mask entry in a
//! registry. The shipped defaults live in `assets/default_masks.json` and
//! can be overridden per run with `--masks`.
//!
//! Temporal masks are sets of Allen relations. Spatial masks are either
//! explicit sets of rectangle-relation pairs or coordinate rules evaluated
//! directly on world boxes (y-down screen coordinates) with the contact
//! tolerance `tau`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::allen::{allen, AllenRelation, FrameInterval};
use crate::algebra::interval_tree::IntervalIndex;
use crate::algebra::rect::rect_relation;
use crate::geom::Bbox;

pub type TemporalMask = BTreeSet<AllenRelation>;

/// The nine relations in which two closed intervals share a frame.
pub fn while_relations() -> TemporalMask {
    use AllenRelation::*;
    [
        Overlaps,
        FinishedBy,
        Contains,
        Starts,
        Equals,
        StartedBy,
        During,
        Finishes,
        OverlappedBy,
    ]
    .into_iter()
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpatialRule {
    Top,
    Bottom,
    Left,
    Right,
    Intersect,
    Border,
    LeftBorder,
    RightBorder,
    TopBorder,
    BottomBorder,
    BottomBorderFlush,
}

impl SpatialRule {
    pub fn from_keyword(s: &str) -> Option<SpatialRule> {
        Some(match s {
            "top" => SpatialRule::Top,
            "bottom" => SpatialRule::Bottom,
            "left" => SpatialRule::Left,
            "right" => SpatialRule::Right,
            "intersect" => SpatialRule::Intersect,
            "border" => SpatialRule::Border,
            "left_border" => SpatialRule::LeftBorder,
            "right_border" => SpatialRule::RightBorder,
            "top_border" => SpatialRule::TopBorder,
            "bottom_border" => SpatialRule::BottomBorder,
            "bottom_border_flush" => SpatialRule::BottomBorderFlush,
            _ => return None,
        })
    }

    /// Does the rule hold for box `a` relative to box `b`?
    pub fn holds(&self, a: &Bbox, b: &Bbox, tau: f64) -> bool {
        let overlap_x = a.xmax.min(b.xmax) - a.xmin.max(b.xmin);
        let overlap_y = a.ymax.min(b.ymax) - a.ymin.max(b.ymin);
        match self {
            SpatialRule::Top => a.ymin < b.ymin - tau,
            SpatialRule::Bottom => a.ymax > b.ymax + tau,
            SpatialRule::Left => a.xmin < b.xmin - tau,
            SpatialRule::Right => a.xmax > b.xmax + tau,
            SpatialRule::Intersect => a.intersects(b),
            // Within tau of contact in both axes, but touching rather than
            // deeply interpenetrating in the contact axis.
            SpatialRule::Border => {
                overlap_x >= -tau && overlap_y >= -tau && overlap_x.min(overlap_y) <= tau
            }
            SpatialRule::LeftBorder => (a.xmax - b.xmin).abs() <= tau && overlap_y >= 0.0,
            SpatialRule::RightBorder => (a.xmin - b.xmax).abs() <= tau && overlap_y >= 0.0,
            SpatialRule::TopBorder => (a.ymax - b.ymin).abs() <= tau && overlap_x >= 0.0,
            SpatialRule::BottomBorder => (a.ymin - b.ymax).abs() <= tau && overlap_x >= 0.0,
            SpatialRule::BottomBorderFlush => {
                (a.ymax - b.ymax).abs() <= tau && overlap_x >= -tau
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum SpatialMask {
    Rule(SpatialRule),
    Pairs(BTreeSet<(AllenRelation, AllenRelation)>),
}

impl SpatialMask {
    pub fn holds(&self, a: &Bbox, b: &Bbox, tau: f64) -> bool {
        match self {
            SpatialMask::Rule(rule) => rule.holds(a, b, tau),
            SpatialMask::Pairs(pairs) => {
                let r = rect_relation(a, b, tau);
                pairs.contains(&(r.x, r.y))
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum MaskError {
    #[error("cannot read masks {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid mask file: {0}")]
    Parse(String),
    #[error("mask {mask:?} references unknown relation {relation:?}")]
    UnknownRelation { mask: String, relation: String },
    #[error("mask {mask:?} references unknown coordinate rule {rule:?}")]
    UnknownRule { mask: String, rule: String },
    #[error("mask {0:?} is empty")]
    EmptyMask(String),
}

#[derive(Debug)]
pub struct MaskRegistry {
    temporal: BTreeMap<String, TemporalMask>,
    spatial: BTreeMap<String, SpatialMask>,
}

const DEFAULT_MASKS: &str = include_str!("../../assets/default_masks.json");

impl Default for MaskRegistry {
    fn default() -> Self {
        Self::defaults()
    }
}

impl MaskRegistry {
    /// The shipped mask set.
    pub fn defaults() -> MaskRegistry {
        let mut reg = MaskRegistry {
            temporal: BTreeMap::new(),
            spatial: BTreeMap::new(),
        };
        reg.merge_str(DEFAULT_MASKS)
            .expect("embedded default masks are valid");
        reg
    }

    /// Defaults overridden by entries from a user mask file.
    pub fn load_file(path: &Path) -> Result<MaskRegistry, MaskError> {
        let text = std::fs::read_to_string(path).map_err(|source| MaskError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut reg = MaskRegistry::defaults();
        reg.merge_str(&text)?;
        Ok(reg)
    }

    pub fn merge_str(&mut self, json: &str) -> Result<(), MaskError> {
        #[derive(Deserialize)]
        struct MaskFile {
            #[serde(default)]
            temporal: BTreeMap<String, Vec<String>>,
            #[serde(default)]
            spatial: BTreeMap<String, SpatialMaskDef>,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum SpatialMaskDef {
            Rule(String),
            Sets { x: Vec<String>, y: Vec<String> },
            Pairs { pairs: Vec<(String, String)> },
        }

        let file: MaskFile =
            serde_json::from_str(json).map_err(|e| MaskError::Parse(e.to_string()))?;

        for (name, rels) in file.temporal {
            if rels.is_empty() {
                return Err(MaskError::EmptyMask(name));
            }
            let mut set = TemporalMask::new();
            for r in &rels {
                set.insert(AllenRelation::from_name(r).ok_or_else(|| {
                    MaskError::UnknownRelation {
                        mask: name.clone(),
                        relation: r.clone(),
                    }
                })?);
            }
            self.temporal.insert(name, set);
        }

        for (name, def) in file.spatial {
            let parse_rel = |mask: &str, r: &str| {
                AllenRelation::from_name(r).ok_or_else(|| MaskError::UnknownRelation {
                    mask: mask.to_string(),
                    relation: r.to_string(),
                })
            };
            let mask = match def {
                SpatialMaskDef::Rule(rule) => SpatialMask::Rule(
                    SpatialRule::from_keyword(&rule).ok_or_else(|| MaskError::UnknownRule {
                        mask: name.clone(),
                        rule: rule.clone(),
                    })?,
                ),
                SpatialMaskDef::Sets { x, y } => {
                    let mut pairs = BTreeSet::new();
                    for rx in &x {
                        for ry in &y {
                            pairs.insert((parse_rel(&name, rx)?, parse_rel(&name, ry)?));
                        }
                    }
                    if pairs.is_empty() {
                        return Err(MaskError::EmptyMask(name));
                    }
                    SpatialMask::Pairs(pairs)
                }
                SpatialMaskDef::Pairs { pairs } => {
                    if pairs.is_empty() {
                        return Err(MaskError::EmptyMask(name));
                    }
                    let mut set = BTreeSet::new();
                    for (rx, ry) in &pairs {
                        set.insert((parse_rel(&name, rx)?, parse_rel(&name, ry)?));
                    }
                    SpatialMask::Pairs(set)
                }
            };
            self.spatial.insert(name, mask);
        }
        Ok(())
    }

    pub fn temporal(&self, name: &str) -> Option<&TemporalMask> {
        self.temporal.get(name)
    }

    pub fn spatial(&self, name: &str) -> Option<&SpatialMask> {
        self.spatial.get(name)
    }

    pub fn temporal_names(&self) -> impl Iterator<Item = &str> {
        self.temporal.keys().map(String::as_str)
    }

    pub fn spatial_names(&self) -> impl Iterator<Item = &str> {
        self.spatial.keys().map(String::as_str)
    }
}

/// Existential mask evaluation over two run lists.
///
/// Returns the first witness pair in `(start_a, start_b)` lexicographic
/// order, or `None` when no pair satisfies the mask (in particular when
/// either list is empty).
pub fn eval_mask_temporal(
    mask: &TemporalMask,
    runs_a: &[FrameInterval],
    runs_b: &[FrameInterval],
) -> Option<(FrameInterval, FrameInterval)> {
    let mut a_sorted: Vec<FrameInterval> = runs_a.to_vec();
    a_sorted.sort();
    let mut b_sorted: Vec<FrameInterval> = runs_b.to_vec();
    b_sorted.sort();

    // Every relation in the while family requires the closed intervals to
    // share a frame, so an interval index can prune candidates exactly.
    let contact_only = mask.iter().all(|r| while_relations().contains(r));
    if contact_only && b_sorted.len() > 4 {
        let index = IntervalIndex::new(&b_sorted);
        for a in &a_sorted {
            for bi in index.overlapping(a) {
                let b = &b_sorted[bi];
                if mask.contains(&allen(a, b)) {
                    return Some((*a, *b));
                }
            }
        }
        return None;
    }

    for a in &a_sorted {
        for b in &b_sorted {
            if mask.contains(&allen(a, b)) {
                return Some((*a, *b));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::allen::ALL_RELATIONS;
    use proptest::prelude::*;

    fn iv(s: usize, e: usize) -> FrameInterval {
        FrameInterval::new(s, e)
    }

    #[test]
    fn default_temporal_masks_partition_the_relations() {
        let reg = MaskRegistry::defaults();
        let before = reg.temporal("before").unwrap();
        let during = reg.temporal("while").unwrap();
        let after = reg.temporal("after").unwrap();
        assert_eq!(before.len(), 2);
        assert_eq!(during.len(), 9);
        assert_eq!(after.len(), 2);
        let mut union = TemporalMask::new();
        union.extend(before);
        union.extend(during);
        union.extend(after);
        assert_eq!(union.len(), 13);
        assert!(before.is_disjoint(during));
        assert!(before.is_disjoint(after));
        assert!(during.is_disjoint(after));
    }

    #[test]
    fn before_mask_finds_sequential_witness() {
        let reg = MaskRegistry::defaults();
        let w = eval_mask_temporal(reg.temporal("before").unwrap(), &[iv(1, 60)], &[iv(61, 120)]);
        assert_eq!(w, Some((iv(1, 60), iv(61, 120))));
    }

    #[test]
    fn empty_run_list_never_matches() {
        let reg = MaskRegistry::defaults();
        assert_eq!(
            eval_mask_temporal(reg.temporal("while").unwrap(), &[], &[iv(1, 120)]),
            None
        );
    }

    #[test]
    fn after_mask_matches_reversed_runs() {
        let reg = MaskRegistry::defaults();
        let w = eval_mask_temporal(reg.temporal("after").unwrap(), &[iv(61, 120)], &[iv(1, 60)]);
        assert_eq!(w, Some((iv(61, 120), iv(1, 60))));
    }

    #[test]
    fn indexed_path_matches_naive_scan() {
        let reg = MaskRegistry::defaults();
        let mask = reg.temporal("while").unwrap();
        let runs_a: Vec<_> = (0..10).map(|i| iv(i * 13 + 1, i * 13 + 5)).collect();
        let runs_b: Vec<_> = (0..10).map(|i| iv(i * 7 + 3, i * 7 + 9)).collect();
        let naive = runs_a.iter().find_map(|a| {
            runs_b
                .iter()
                .find(|b| mask.contains(&allen(a, b)))
                .map(|b| (*a, **b))
        });
        assert_eq!(eval_mask_temporal(mask, &runs_a, &runs_b), naive);
    }

    #[test]
    fn user_masks_override_defaults() {
        let mut reg = MaskRegistry::defaults();
        reg.merge_str(r#"{"temporal": {"before": ["precedes"]}}"#).unwrap();
        assert_eq!(reg.temporal("before").unwrap().len(), 1);
        assert!(reg.temporal("while").is_some());
    }

    #[test]
    fn spatial_rule_left_border() {
        let reg = MaskRegistry::defaults();
        let mask = reg.spatial("left_border").unwrap();
        let a = Bbox::from_xywh(0.0, 0.0, 10.0, 10.0);
        let b = Bbox::from_xywh(10.5, 2.0, 10.0, 10.0);
        assert!(mask.holds(&a, &b, 2.0));
        assert!(!mask.holds(&a, &b, 0.1));
        // No y overlap: contact fails.
        let b_far = Bbox::from_xywh(10.5, 30.0, 10.0, 10.0);
        assert!(!mask.holds(&a, &b_far, 2.0));
    }

    #[test]
    fn explicit_pair_masks_use_rect_relation() {
        let mut reg = MaskRegistry::defaults();
        reg.merge_str(r#"{"spatial": {"x_before": {"x": ["precedes", "meets"], "y": ["equals"]}}}"#)
            .unwrap();
        let mask = reg.spatial("x_before").unwrap();
        let a = Bbox::from_xywh(0.0, 0.0, 10.0, 10.0);
        let b = Bbox::from_xywh(20.0, 0.0, 10.0, 10.0);
        assert!(mask.holds(&a, &b, 0.0));
        assert!(!mask.holds(&b, &a, 0.0));
    }

    proptest! {
        /// Growing a mask can only make evaluation more permissive.
        #[test]
        fn mask_evaluation_is_monotone(
            bits in 0u16..(1 << 13),
            extra in 0usize..13,
            s1 in 1usize..50, l1 in 0usize..20,
            s2 in 1usize..50, l2 in 0usize..20,
        ) {
            let mut mask = TemporalMask::new();
            for (i, rel) in ALL_RELATIONS.iter().enumerate() {
                if bits & (1 << i) != 0 {
                    mask.insert(*rel);
                }
            }
            let mut bigger = mask.clone();
            bigger.insert(ALL_RELATIONS[extra]);
            let a = [iv(s1, s1 + l1)];
            let b = [iv(s2, s2 + l2)];
            if eval_mask_temporal(&mask, &a, &b).is_some() {
                prop_assert!(eval_mask_temporal(&bigger, &a, &b).is_some());
            }
        }
    }
}
