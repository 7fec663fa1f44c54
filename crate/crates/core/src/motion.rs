//! Per-frame matrix factoring and motion channel segmentation.
//!
//! Every frame matrix is factored as translation * rotation * scale
//! (Thomas-style TRS factoring in SVG axis convention). From the factored
//! attributes the engine derives per-frame deltas, classifies each frame as
//! translation/rotation/scale active, and groups maximal contiguous active
//! runs into motion segments. The resulting object-by-frame grid is the
//! animation matrix every predicate evaluates against.

use thiserror::Error;

use crate::config::Tolerances;
use crate::geom::{Affine, Bbox};
use crate::scene::Scene;
use crate::trace::AnimationTrace;

/// Linear-part deviation from identity below which an inter-frame relative
/// transform counts as a pure translation (no fixed point reported).
const ORIGIN_LINEAR_EPS: f64 = 1e-6;

/// Relative shear residual above which a warning is recorded.
const SHEAR_WARN_REL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum MotionError {
    #[error("degenerate matrix for object {object:?} at frame {frame}")]
    DegenerateMatrix { object: String, frame: usize },
}

/// A motion channel: one of the three per-frame delta streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Channel {
    Translate,
    Rotate,
    Scale,
}

impl Channel {
    pub fn name(&self) -> &'static str {
        match self {
            Channel::Translate => "translate",
            Channel::Rotate => "rotate",
            Channel::Scale => "scale",
        }
    }
}

/// Result of factoring one affine matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decomposition {
    pub translation: (f64, f64),
    /// Degrees in (-180, 180]; positive turns clockwise on screen (y-down).
    pub angle_deg: f64,
    /// `scale.0 > 0`; `scale.1` carries the determinant sign.
    pub scale: (f64, f64),
    /// Shear component left over after removing rotation and scale.
    pub shear_residual: f64,
}

/// Factor `m` into translation, rotation, and scale.
///
/// `sx = sqrt(a^2 + b^2)`, `angle = atan2(b, a)`, `sy = det / sx`. For
/// shear-free input, `translate * rotate * scale` recomposes to `m` within
/// 1e-6 absolute.
pub fn decompose(m: &Affine) -> Result<Decomposition, MotionError> {
    if m.det().abs() <= crate::trace::DEGENERATE_DET {
        return Err(MotionError::DegenerateMatrix {
            object: String::new(),
            frame: 0,
        });
    }
    let sx = (m.a * m.a + m.b * m.b).sqrt();
    let angle_deg = m.b.atan2(m.a).to_degrees();
    let sy = m.det() / sx;
    let shear_residual = (m.a * m.c + m.b * m.d) / sx;
    Ok(Decomposition {
        translation: (m.e, m.f),
        angle_deg,
        scale: (sx, sy),
        shear_residual,
    })
}

/// Recompose a decomposition into a matrix (ignores any shear residual).
pub fn recompose(d: &Decomposition) -> Affine {
    Affine::translate(d.translation.0, d.translation.1)
        .mul(&Affine::rotate_deg(d.angle_deg))
        .mul(&Affine::scale(d.scale.0, d.scale.1))
}

/// Fixed-point constraint of an inter-frame relative transform.
///
/// Rotations and two-axis scales pin a unique point; single-axis scales fix
/// a whole line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OriginConstraint {
    Point { x: f64, y: f64 },
    /// Points satisfying `nx*x + ny*y = c`, with `(nx, ny)` unit length.
    Line { nx: f64, ny: f64, c: f64 },
}

impl OriginConstraint {
    /// Distance from `p` to the fixed-point set.
    pub fn distance(&self, p: (f64, f64)) -> f64 {
        match self {
            OriginConstraint::Point { x, y } => ((p.0 - x).powi(2) + (p.1 - y).powi(2)).sqrt(),
            OriginConstraint::Line { nx, ny, c } => (nx * p.0 + ny * p.1 - c).abs(),
        }
    }

    /// A concrete point of the fixed set: the point itself, or the
    /// projection of `near` onto the fixed line.
    pub fn representative(&self, near: (f64, f64)) -> (f64, f64) {
        match self {
            OriginConstraint::Point { x, y } => (*x, *y),
            OriginConstraint::Line { nx, ny, c } => {
                let d = nx * near.0 + ny * near.1 - c;
                (near.0 - d * nx, near.1 - d * ny)
            }
        }
    }
}

/// Solve for the fixed points of `delta`, the relative transform between
/// consecutive frames. Returns `None` when the linear part is identity
/// within tolerance (pure translation).
pub fn solve_origin(delta: &Affine) -> Option<OriginConstraint> {
    // (I - L) x = t
    let a11 = 1.0 - delta.a;
    let a12 = -delta.c;
    let a21 = -delta.b;
    let a22 = 1.0 - delta.d;
    let norm = a11.abs().max(a12.abs()).max(a21.abs()).max(a22.abs());
    if norm <= ORIGIN_LINEAR_EPS {
        return None;
    }
    let det = a11 * a22 - a12 * a21;
    if det.abs() > 1e-6 * norm * norm {
        let inv = 1.0 / det;
        let x = inv * (a22 * delta.e - a12 * delta.f);
        let y = inv * (-a21 * delta.e + a11 * delta.f);
        Some(OriginConstraint::Point { x, y })
    } else {
        // Rank one: the fixed set is a line. Use the better-conditioned row.
        let (rx, ry, rhs) = if a11.hypot(a12) >= a21.hypot(a22) {
            (a11, a12, delta.e)
        } else {
            (a21, a22, delta.f)
        };
        let len = rx.hypot(ry);
        Some(OriginConstraint::Line {
            nx: rx / len,
            ny: ry / len,
            c: rhs / len,
        })
    }
}

/// Everything the engine knows about one object at one frame.
#[derive(Clone, Debug)]
pub struct FrameAttributes {
    /// Transformed local-bbox center, px.
    pub center_world: (f64, f64),
    /// Unwrapped cumulative angle, degrees.
    pub angle: f64,
    /// Signed scale factors.
    pub scale: (f64, f64),
    /// Center displacement since the previous frame, px (zero at frame 1).
    pub d_translate: (f64, f64),
    /// Angle change since the previous frame, degrees (zero at frame 1).
    pub d_rotate: f64,
    /// Scale ratios since the previous frame (one at frame 1).
    pub d_scale: (f64, f64),
    /// Fixed-point constraint of the inter-frame relative transform.
    pub origin: Option<OriginConstraint>,
    /// Concrete fixed point (line constraints are projected to the point
    /// nearest the object center).
    pub origin_fix: Option<(f64, f64)>,
    /// Axis-aligned hull of the transformed local bbox, px.
    pub bbox_world: Bbox,
}

/// Net effect of one maximal run of channel activity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SegmentNet {
    Translate { dx: f64, dy: f64 },
    Rotate { degrees: f64 },
    Scale { rx: f64, ry: f64, flip_x: bool, flip_y: bool },
}

impl SegmentNet {
    /// Magnitude in the channel's natural unit (px, degrees, or the larger
    /// axis ratio deviation for scale).
    pub fn magnitude(&self) -> f64 {
        match self {
            SegmentNet::Translate { dx, dy } => dx.hypot(*dy),
            SegmentNet::Rotate { degrees } => *degrees,
            SegmentNet::Scale { rx, ry, .. } => {
                let dx = (rx - 1.0).abs();
                let dy = (ry - 1.0).abs();
                if dx >= dy {
                    *rx
                } else {
                    *ry
                }
            }
        }
    }
}

/// A maximal contiguous run of channel activity.
#[derive(Clone, Debug)]
pub struct MotionSegment {
    pub object_index: usize,
    pub channel: Channel,
    /// 1-based inclusive bounds; `start_frame >= 2` because frame 1 has no
    /// predecessor and therefore zero deltas.
    pub start_frame: usize,
    pub end_frame: usize,
    /// Net change from frame `start_frame - 1` to `end_frame`.
    pub net: SegmentNet,
    /// Mean fixed point across the run (rotation/scale only).
    pub mean_origin: Option<(f64, f64)>,
    /// True when per-frame fixed points spread further than the configured
    /// threshold around the mean.
    pub origin_unstable: bool,
}

impl MotionSegment {
    pub fn interval(&self) -> crate::algebra::FrameInterval {
        crate::algebra::FrameInterval::new(self.start_frame, self.end_frame)
    }

    pub fn duration_seconds(&self, fps: f64) -> f64 {
        (self.end_frame - self.start_frame + 1) as f64 / fps
    }
}

#[derive(Clone, Debug, Default)]
pub struct ChannelSegments {
    pub translate: Vec<MotionSegment>,
    pub rotate: Vec<MotionSegment>,
    pub scale: Vec<MotionSegment>,
}

impl ChannelSegments {
    pub fn of(&self, channel: Channel) -> &[MotionSegment] {
        match channel {
            Channel::Translate => &self.translate,
            Channel::Rotate => &self.rotate,
            Channel::Scale => &self.scale,
        }
    }

    pub fn all(&self) -> impl Iterator<Item = &MotionSegment> {
        self.translate
            .iter()
            .chain(self.rotate.iter())
            .chain(self.scale.iter())
    }
}

/// One row of the animation matrix.
#[derive(Clone, Debug)]
pub struct ObjectChannels {
    /// Index 0 holds frame 1.
    pub frames: Vec<FrameAttributes>,
    pub t_active: Vec<bool>,
    pub r_active: Vec<bool>,
    pub s_active: Vec<bool>,
    pub segments: ChannelSegments,
}

impl ObjectChannels {
    pub fn attrs(&self, frame: usize) -> &FrameAttributes {
        &self.frames[frame - 1]
    }

    pub fn active(&self, channel: Channel, frame: usize) -> bool {
        match channel {
            Channel::Translate => self.t_active[frame - 1],
            Channel::Rotate => self.r_active[frame - 1],
            Channel::Scale => self.s_active[frame - 1],
        }
    }

    pub fn any_active(&self, frame: usize) -> bool {
        self.t_active[frame - 1] || self.r_active[frame - 1] || self.s_active[frame - 1]
    }
}

/// The animation matrix: per-object, per-frame decomposed motion
/// attributes plus segmented channel activity.
#[derive(Clone, Debug)]
pub struct MotionChannels {
    pub fps: f64,
    pub num_frames: usize,
    /// Parallel to `Scene::objects`.
    pub objects: Vec<ObjectChannels>,
    /// Non-fatal observations (e.g. shear residuals).
    pub warnings: Vec<String>,
}

impl MotionChannels {
    pub fn bbox_world(&self, object: usize, frame: usize) -> &Bbox {
        &self.objects[object].attrs(frame).bbox_world
    }
}

/// Normalize an angle difference into (-180, 180].
fn wrap_delta_deg(d: f64) -> f64 {
    let mut x = d % 360.0;
    if x <= -180.0 {
        x += 360.0;
    } else if x > 180.0 {
        x -= 360.0;
    }
    x
}

/// Build the animation matrix for a scene/trace pair.
pub fn build_channels(
    scene: &Scene,
    trace: &AnimationTrace,
    cfg: &Tolerances,
) -> Result<MotionChannels, MotionError> {
    let n = trace.num_frames;
    let mut objects = Vec::with_capacity(scene.objects.len());
    let mut warnings = Vec::new();

    for (oi, obj) in scene.objects.iter().enumerate() {
        let mats = &trace.frames[oi];
        let center_local = obj.bbox_local.center();

        let mut frames: Vec<FrameAttributes> = Vec::with_capacity(n);
        let mut shear_frames = 0usize;
        let mut first_shear_frame = 0usize;

        for f in 1..=n {
            let m = &mats[f - 1];
            let dec = decompose(m).map_err(|_| MotionError::DegenerateMatrix {
                object: obj.id.clone(),
                frame: f,
            })?;
            if dec.shear_residual.abs() > SHEAR_WARN_REL * dec.scale.0 {
                shear_frames += 1;
                if shear_frames == 1 {
                    first_shear_frame = f;
                }
            }

            let center_world = m.apply(center_local.0, center_local.1);
            let bbox_world = obj.bbox_local.transform(m);

            let (angle, d_translate, d_rotate, d_scale, origin) = if f == 1 {
                (dec.angle_deg, (0.0, 0.0), 0.0, (1.0, 1.0), None)
            } else {
                let prev: &FrameAttributes = &frames[f - 2];
                let angle = prev.angle + wrap_delta_deg(dec.angle_deg - prev.angle);
                let d_translate = (
                    center_world.0 - prev.center_world.0,
                    center_world.1 - prev.center_world.1,
                );
                let d_rotate = angle - prev.angle;
                let d_scale = (dec.scale.0 / prev.scale.0, dec.scale.1 / prev.scale.1);
                let origin = mats[f - 2]
                    .invert()
                    .map(|prev_inv| m.mul(&prev_inv))
                    .and_then(|delta| solve_origin(&delta));
                (angle, d_translate, d_rotate, d_scale, origin)
            };

            let origin_fix = origin.map(|c| c.representative(center_world));
            frames.push(FrameAttributes {
                center_world,
                angle,
                scale: dec.scale,
                d_translate,
                d_rotate,
                d_scale,
                origin,
                origin_fix,
                bbox_world,
            });
        }

        if shear_frames > 0 {
            warnings.push(format!(
                "object {:?}: unsupported shear residual in {} frame(s), first at frame {}",
                obj.id, shear_frames, first_shear_frame
            ));
        }

        let t_active: Vec<bool> = frames
            .iter()
            .map(|a| a.d_translate.0.hypot(a.d_translate.1) > cfg.t_eps)
            .collect();
        let r_active: Vec<bool> = frames.iter().map(|a| a.d_rotate.abs() > cfg.r_eps).collect();
        let s_active: Vec<bool> = frames
            .iter()
            .map(|a| {
                (a.d_scale.0 - 1.0).abs().max((a.d_scale.1 - 1.0).abs()) > cfg.s_eps
            })
            .collect();

        let segments = ChannelSegments {
            translate: collect_segments(oi, Channel::Translate, &t_active, &frames, cfg),
            rotate: collect_segments(oi, Channel::Rotate, &r_active, &frames, cfg),
            scale: collect_segments(oi, Channel::Scale, &s_active, &frames, cfg),
        };

        objects.push(ObjectChannels {
            frames,
            t_active,
            r_active,
            s_active,
            segments,
        });
    }

    Ok(MotionChannels {
        fps: trace.fps,
        num_frames: n,
        objects,
        warnings,
    })
}

fn collect_segments(
    object_index: usize,
    channel: Channel,
    active: &[bool],
    frames: &[FrameAttributes],
    cfg: &Tolerances,
) -> Vec<MotionSegment> {
    let mut segments = Vec::new();
    let n = active.len();
    let mut f = 1usize;
    while f <= n {
        if !active[f - 1] {
            f += 1;
            continue;
        }
        let start = f;
        while f < n && active[f] {
            f += 1;
        }
        let end = f;
        f += 1;
        segments.push(make_segment(
            object_index,
            channel,
            start,
            end,
            frames,
            cfg,
        ));
    }
    segments
}

fn make_segment(
    object_index: usize,
    channel: Channel,
    start: usize,
    end: usize,
    frames: &[FrameAttributes],
    cfg: &Tolerances,
) -> MotionSegment {
    // Frame 1 has zero deltas, so every active run starts at frame 2 or
    // later and start - 1 is a valid frame index.
    debug_assert!(start >= 2);
    let before = &frames[start - 2];
    let last = &frames[end - 1];

    let net = match channel {
        Channel::Translate => SegmentNet::Translate {
            dx: last.center_world.0 - before.center_world.0,
            dy: last.center_world.1 - before.center_world.1,
        },
        Channel::Rotate => SegmentNet::Rotate {
            degrees: last.angle - before.angle,
        },
        Channel::Scale => {
            let rx_raw = last.scale.0 / before.scale.0;
            let ry_raw = last.scale.1 / before.scale.1;
            SegmentNet::Scale {
                rx: rx_raw.abs(),
                ry: ry_raw.abs(),
                flip_x: rx_raw < 0.0,
                flip_y: ry_raw < 0.0,
            }
        }
    };

    let (mean_origin, origin_unstable) = if channel == Channel::Translate {
        (None, false)
    } else {
        let reps: Vec<(f64, f64)> = (start..=end)
            .filter_map(|f| frames[f - 1].origin_fix)
            .collect();
        if reps.is_empty() {
            (None, false)
        } else {
            let n = reps.len() as f64;
            let mean = (
                reps.iter().map(|p| p.0).sum::<f64>() / n,
                reps.iter().map(|p| p.1).sum::<f64>() / n,
            );
            let spread = reps
                .iter()
                .map(|p| (p.0 - mean.0).hypot(p.1 - mean.1))
                .fold(0.0, f64::max);
            (Some(mean), spread > cfg.origin_spread)
        }
    };

    MotionSegment {
        object_index,
        channel,
        start_frame: start,
        end_frame: end,
        net,
        mean_origin,
        origin_unstable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Rgb;
    use crate::scene::{ObjectInfo, ShapeClass};
    use proptest::prelude::*;

    fn one_object_scene(bbox: Bbox) -> Scene {
        Scene {
            objects: vec![ObjectInfo {
                id: "obj".into(),
                shape: ShapeClass::Square,
                color: Rgb::new(0, 0, 0),
                color_name: Some("black".into()),
                bbox_local: bbox,
            }],
        }
    }

    fn trace_from(mats: Vec<Affine>) -> AnimationTrace {
        AnimationTrace {
            fps: 60.0,
            num_frames: mats.len(),
            frames: vec![mats],
        }
    }

    #[test]
    fn decompose_identity() {
        let d = decompose(&Affine::IDENTITY).unwrap();
        assert_eq!(d.translation, (0.0, 0.0));
        assert_eq!(d.angle_deg, 0.0);
        assert_eq!(d.scale, (1.0, 1.0));
    }

    #[test]
    fn decompose_quarter_turn_with_offset() {
        let m = Affine::from_array([0.0, 1.0, -1.0, 0.0, 10.0, 20.0]);
        let d = decompose(&m).unwrap();
        assert_eq!(d.translation, (10.0, 20.0));
        assert!((d.angle_deg - 90.0).abs() < 1e-12);
        assert!((d.scale.0 - 1.0).abs() < 1e-12 && (d.scale.1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decompose_rotated_uniform_scale() {
        let c = 45.0_f64.to_radians().cos();
        let s = 45.0_f64.to_radians().sin();
        let m = Affine::from_array([2.0 * c, 2.0 * s, -2.0 * s, 2.0 * c, 0.0, 0.0]);
        let d = decompose(&m).unwrap();
        assert!((d.angle_deg - 45.0).abs() < 1e-9);
        assert!((d.scale.0 - 2.0).abs() < 1e-9 && (d.scale.1 - 2.0).abs() < 1e-9);
        assert!(recompose(&d).max_abs_diff(&m) < 1e-9);
    }

    #[test]
    fn degenerate_matrix_is_rejected() {
        let m = Affine::from_array([1.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert!(decompose(&m).is_err());
    }

    #[test]
    fn static_trace_has_no_segments() {
        let scene = one_object_scene(Bbox::from_xywh(0.0, 0.0, 50.0, 50.0));
        let trace = trace_from(vec![Affine::IDENTITY; 40]);
        let ch = build_channels(&scene, &trace, &Tolerances::default()).unwrap();
        assert!(ch.objects[0].segments.all().next().is_none());
    }

    #[test]
    fn constant_translation_makes_one_segment() {
        let scene = one_object_scene(Bbox::from_xywh(0.0, 0.0, 50.0, 50.0));
        let mats: Vec<Affine> = (1..=61)
            .map(|f| Affine::translate(2.0 * (f - 1) as f64, 0.0))
            .collect();
        let ch = build_channels(&scene, &trace_from(mats), &Tolerances::default()).unwrap();
        let segs = &ch.objects[0].segments.translate;
        assert_eq!(segs.len(), 1);
        assert_eq!((segs[0].start_frame, segs[0].end_frame), (2, 61));
        match segs[0].net {
            SegmentNet::Translate { dx, dy } => {
                assert!((dx - 120.0).abs() < 1e-9);
                assert!(dy.abs() < 1e-9);
            }
            _ => panic!("wrong channel"),
        }
        assert!(ch.objects[0].segments.rotate.is_empty());
        assert!(ch.objects[0].segments.scale.is_empty());
    }

    #[test]
    fn center_rotation_recovers_angle_and_origin() {
        let bbox = Bbox::from_xywh(100.0, 100.0, 50.0, 50.0);
        let center = bbox.center();
        let scene = one_object_scene(bbox);
        let mats: Vec<Affine> = (1..=121)
            .map(|f| Affine::rotate_about(0.75 * (f - 1) as f64, center.0, center.1))
            .collect();
        let ch = build_channels(&scene, &trace_from(mats), &Tolerances::default()).unwrap();
        let segs = &ch.objects[0].segments.rotate;
        assert_eq!(segs.len(), 1);
        assert_eq!((segs[0].start_frame, segs[0].end_frame), (2, 121));
        match segs[0].net {
            SegmentNet::Rotate { degrees } => assert!((degrees - 90.0).abs() < 1e-9),
            _ => panic!("wrong channel"),
        }
        let mean = segs[0].mean_origin.unwrap();
        assert!((mean.0 - center.0).hypot(mean.1 - center.1) < 0.5);
        assert!(!segs[0].origin_unstable);
    }

    #[test]
    fn full_turn_unwraps_to_360() {
        let bbox = Bbox::from_xywh(0.0, 0.0, 10.0, 10.0);
        let scene = one_object_scene(bbox);
        let n_deltas = 240;
        let mats: Vec<Affine> = (0..=n_deltas)
            .map(|i| Affine::rotate_about(360.0 * i as f64 / n_deltas as f64, 5.0, 5.0))
            .collect();
        let ch = build_channels(&scene, &trace_from(mats), &Tolerances::default()).unwrap();
        let segs = &ch.objects[0].segments.rotate;
        assert_eq!(segs.len(), 1);
        match segs[0].net {
            SegmentNet::Rotate { degrees } => assert!((degrees - 360.0).abs() < 1e-6),
            _ => panic!("wrong channel"),
        }
    }

    #[test]
    fn pure_rotation_origin_is_exact_each_frame() {
        let p = (320.0, 240.0);
        let bbox = Bbox::from_xywh(0.0, 0.0, 40.0, 40.0);
        let scene = one_object_scene(bbox);
        let mats: Vec<Affine> = (0..90)
            .map(|i| Affine::rotate_about(1.0 * i as f64, p.0, p.1))
            .collect();
        let ch = build_channels(&scene, &trace_from(mats), &Tolerances::default()).unwrap();
        for f in 2..=90 {
            let fix = ch.objects[0].attrs(f).origin_fix.unwrap();
            assert!(
                (fix.0 - p.0).hypot(fix.1 - p.1) < 1e-6,
                "frame {f}: fix {fix:?}"
            );
        }
    }

    #[test]
    fn single_axis_scale_fixes_a_line() {
        let m = Affine::scale_about(2.0, 1.0, 100.0, 50.0);
        match solve_origin(&m).unwrap() {
            OriginConstraint::Line { nx, ny, c } => {
                // Fixed line is x = 100.
                assert!((nx.abs() - 1.0).abs() < 1e-9);
                assert!(ny.abs() < 1e-9);
                assert!((c / nx - 100.0).abs() < 1e-9);
            }
            other => panic!("expected line, got {other:?}"),
        }
    }

    #[test]
    fn untransformed_bbox_translates_with_e_f() {
        let bbox = Bbox::from_xywh(10.0, 20.0, 30.0, 40.0);
        let scene = one_object_scene(bbox);
        let mats = vec![Affine::IDENTITY, Affine::translate(7.0, -3.0)];
        let ch = build_channels(&scene, &trace_from(mats), &Tolerances::default()).unwrap();
        let world = ch.bbox_world(0, 2);
        assert_eq!(*world, Bbox::from_xywh(17.0, 17.0, 30.0, 40.0));
    }

    proptest! {
        /// Factor-then-recompose is the identity for shear-free inputs.
        #[test]
        fn decompose_recompose_roundtrip(
            tx in -500.0..500.0f64, ty in -500.0..500.0f64,
            angle in -179.0..180.0f64,
            sx in 0.05..20.0f64, sy_abs in 0.05..20.0f64, flip in proptest::bool::ANY,
        ) {
            let sy = if flip { -sy_abs } else { sy_abs };
            let m = Affine::translate(tx, ty)
                .mul(&Affine::rotate_deg(angle))
                .mul(&Affine::scale(sx, sy));
            let d = decompose(&m).unwrap();
            prop_assert!(recompose(&d).max_abs_diff(&m) < 1e-6);
            prop_assert!(d.scale.0 > 0.0);
            prop_assert!((d.scale.1 < 0.0) == flip);
            prop_assert!(d.shear_residual.abs() < 1e-6 * d.scale.0.max(1.0));
        }

        /// Segment union reproduces the active-frame set exactly.
        #[test]
        fn segments_cover_active_frames(pattern in proptest::collection::vec(proptest::bool::ANY, 1..60)) {
            // Build a trace whose translation activity follows `pattern`:
            // move 1 px on active frames, hold otherwise. Frame 1 is always
            // inactive by construction.
            let mut x = 0.0;
            let mut mats = vec![Affine::IDENTITY];
            for &on in &pattern {
                if on {
                    x += 1.0;
                }
                mats.push(Affine::translate(x, 0.0));
            }
            let scene = one_object_scene(Bbox::from_xywh(0.0, 0.0, 10.0, 10.0));
            let n = mats.len();
            let ch = build_channels(&scene, &trace_from(mats), &Tolerances::default()).unwrap();
            let mut covered = vec![false; n];
            for seg in &ch.objects[0].segments.translate {
                for f in seg.start_frame..=seg.end_frame {
                    prop_assert!(!covered[f - 1], "segments overlap at frame {}", f);
                    covered[f - 1] = true;
                }
            }
            for f in 1..=n {
                prop_assert_eq!(covered[f - 1], ch.objects[0].t_active[f - 1]);
            }
            // Segments are sorted and disjoint by construction.
            let segs = &ch.objects[0].segments.translate;
            for pair in segs.windows(2) {
                prop_assert!(pair[0].end_frame + 1 < pair[1].start_frame);
            }
        }
    }
}
