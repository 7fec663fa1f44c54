//! Qualitative temporal and spatial algebra on frame intervals and
//! axis-aligned boxes: the 13 Allen interval relations, their 169
//! rectangle-algebra pairs, named aggregation masks, and an interval index
//! for stabbing/overlap queries.

mod allen;
mod interval_tree;
mod masks;
mod rect;

pub use allen::{allen, AllenRelation, FrameInterval, ALL_RELATIONS};
pub use interval_tree::IntervalIndex;
pub use masks::{
    eval_mask_temporal, MaskError, MaskRegistry, SpatialMask, SpatialRule, TemporalMask,
};
pub use rect::{classify_extent, rect_relation, RectRelation};
