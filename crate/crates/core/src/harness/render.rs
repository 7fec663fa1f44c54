//! Exact trace rendering for animation specs.
//!
//! Frame `f` shows the state at time `(f - 1) / fps`, so frame 1 is always
//! the untransformed scene. A motion with start `s` and duration `d`
//! anchors at frame `fs = s*fps + 1`, completes at frame `fe = (s+d)*fps`,
//! and interpolates eased progress linearly in frame index between the
//! two. Both easings reach progress exactly 0 at `fs` and exactly 1 at
//! `fe`, so rendered net magnitudes equal the spec values analytically.
//!
//! Motions of one object compose left-multiplied in list order: later
//! list entries apply after earlier ones in world space. Percent origins
//! resolve against the object's initial (frame 1) bbox.

use crate::geom::{Affine, Bbox};
use crate::scene::{ObjectInfo, Scene, ShapeClass};
use crate::trace::AnimationTrace;

use super::{
    AtomicMotionSpec, DirectionSpec, HarnessError, MagnitudeSpec, MotionKind, OriginCoord,
    SceneGraphSpec,
};

/// Frame-grid alignment tolerance for start/end times.
const ALIGN_EPS: f64 = 1e-6;

fn aligned_frame(seconds: f64, fps: f64, what: &str, id: &str) -> Result<i64, HarnessError> {
    let raw = seconds * fps;
    let rounded = raw.round();
    if (raw - rounded).abs() > ALIGN_EPS {
        return Err(HarnessError::InvalidSpec(format!(
            "motion {id:?}: {what} {seconds}s is not aligned to the {fps} fps frame grid"
        )));
    }
    Ok(rounded as i64)
}

struct PlannedMotion {
    /// Frame at which progress is exactly 0.
    anchor: i64,
    /// Frame at which progress is exactly 1.
    complete: i64,
    easing: super::Easing,
    kind: MotionKind,
    /// Screen-space displacement for translations.
    displacement: (f64, f64),
    /// Signed degrees for rotations (positive = clockwise on screen).
    degrees: f64,
    /// Target ratios for scales.
    ratios: (f64, f64),
    /// Fixed point for rotation/scale, resolved against the initial bbox.
    pivot: (f64, f64),
}

impl PlannedMotion {
    fn matrix_at(&self, frame: i64) -> Affine {
        let span = (self.complete - self.anchor) as f64;
        let u = ((frame - self.anchor) as f64 / span).clamp(0.0, 1.0);
        let p = self.easing.apply(u);
        match self.kind {
            MotionKind::Translate => {
                Affine::translate(p * self.displacement.0, p * self.displacement.1)
            }
            MotionKind::Rotate => {
                Affine::rotate_about(p * self.degrees, self.pivot.0, self.pivot.1)
            }
            MotionKind::Scale => Affine::scale_about(
                1.0 + p * (self.ratios.0 - 1.0),
                1.0 + p * (self.ratios.1 - 1.0),
                self.pivot.0,
                self.pivot.1,
            ),
        }
    }
}

fn plan_motion(
    m: &AtomicMotionSpec,
    bbox: &Bbox,
    fps: f64,
) -> Result<PlannedMotion, HarnessError> {
    let anchor = aligned_frame(m.start, fps, "start", &m.id)? + 1;
    let complete = aligned_frame(m.end(), fps, "end", &m.id)?;
    if complete < anchor + 1 {
        return Err(HarnessError::InvalidSpec(format!(
            "motion {:?} spans fewer than one frame step at {fps} fps",
            m.id
        )));
    }

    let pivot = match &m.origin {
        Some([x, y]) => {
            let resolve = |c: &OriginCoord, min: f64, extent: f64| match c {
                OriginCoord::Px(v) => *v,
                OriginCoord::Percent(p) => min + extent * p / 100.0,
            };
            (
                resolve(x, bbox.xmin, bbox.width()),
                resolve(y, bbox.ymin, bbox.height()),
            )
        }
        None => bbox.center(),
    };

    let mut planned = PlannedMotion {
        anchor,
        complete,
        easing: m.easing,
        kind: m.kind,
        displacement: (0.0, 0.0),
        degrees: 0.0,
        ratios: (1.0, 1.0),
        pivot,
    };

    match (m.kind, &m.direction, &m.magnitude) {
        (MotionKind::Translate, Some(DirectionSpec::Vector(v)), Some(MagnitudeSpec::Scalar(px))) => {
            let norm = v[0].hypot(v[1]);
            // Logical y-up direction; screen y grows downward.
            planned.displacement = (px * v[0] / norm, -px * v[1] / norm);
        }
        (MotionKind::Rotate, Some(DirectionSpec::Named(sense)), Some(MagnitudeSpec::Scalar(deg))) => {
            planned.degrees = if sense == "clockwise" { *deg } else { -deg };
        }
        (MotionKind::Scale, _, Some(MagnitudeSpec::Pair(r))) => {
            planned.ratios = (r[0], r[1]);
        }
        _ => {
            return Err(HarnessError::InvalidSpec(format!(
                "motion {:?} has inconsistent kind/direction/magnitude",
                m.id
            )))
        }
    }
    Ok(planned)
}

/// Render a spec to a scene and an exact per-frame trace.
pub fn render_trace(
    spec: &SceneGraphSpec,
    fps_override: Option<f64>,
) -> Result<(Scene, AnimationTrace), HarnessError> {
    spec.validate()?;
    let fps = fps_override.unwrap_or(spec.fps);

    let objects: Vec<ObjectInfo> = spec
        .objects
        .iter()
        .map(|o| {
            let color = crate::color::parse_color(&o.color).expect("validated");
            ObjectInfo {
                id: o.id.clone(),
                shape: ShapeClass::from_name(&o.shape).expect("validated"),
                color,
                color_name: color.css_name().map(str::to_string),
                bbox_local: Bbox::from_xywh(o.bbox[0], o.bbox[1], o.bbox[2], o.bbox[3]),
            }
        })
        .collect();
    let scene = Scene { objects };
    scene
        .validate()
        .map_err(HarnessError::InvalidSpec)?;

    let num_frames = ((spec.total_duration() * fps).round() as usize).max(1);

    let mut frames: Vec<Vec<Affine>> = Vec::with_capacity(scene.objects.len());
    for obj in &scene.objects {
        let planned: Vec<PlannedMotion> = spec
            .motions
            .iter()
            .filter(|m| m.agent == obj.id)
            .map(|m| plan_motion(m, &obj.bbox_local, fps))
            .collect::<Result<_, _>>()?;

        let mut mats = Vec::with_capacity(num_frames);
        for f in 1..=num_frames as i64 {
            let mut m = Affine::IDENTITY;
            // Later motions in list order apply after earlier ones.
            for p in &planned {
                m = p.matrix_at(f).mul(&m);
            }
            mats.push(m);
        }
        frames.push(mats);
    }

    Ok((
        scene,
        AnimationTrace {
            fps,
            num_frames,
            frames,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::super::{
        AtomicMotionSpec, DirectionSpec, Easing, MagnitudeSpec, MotionKind, OriginCoord,
        SceneGraphSpec, SpecObject,
    };
    use super::*;

    fn base_spec(kind: MotionKind) -> SceneGraphSpec {
        let (direction, magnitude, origin) = match kind {
            MotionKind::Translate => (
                DirectionSpec::Vector([0.0, 1.0]),
                MagnitudeSpec::Scalar(100.0),
                None,
            ),
            MotionKind::Rotate => (
                DirectionSpec::Named("clockwise".into()),
                MagnitudeSpec::Scalar(90.0),
                Some([OriginCoord::Percent(100.0), OriginCoord::Percent(100.0)]),
            ),
            MotionKind::Scale => (
                DirectionSpec::Vector([1.0, 1.0]),
                MagnitudeSpec::Pair([2.0, 2.0]),
                Some([OriginCoord::Percent(50.0), OriginCoord::Percent(50.0)]),
            ),
        };
        SceneGraphSpec {
            name: "render_test".into(),
            fps: 60.0,
            duration: None,
            objects: vec![SpecObject {
                id: "a".into(),
                shape: "square".into(),
                color: "black".into(),
                bbox: [100.0, 200.0, 50.0, 50.0],
            }],
            motions: vec![AtomicMotionSpec {
                id: "m_1".into(),
                agent: "a".into(),
                kind,
                direction: Some(direction),
                magnitude: Some(magnitude),
                origin,
                duration: 2.0,
                start: 0.0,
                easing: Easing::Linear,
                post: None,
                checks: None,
            }],
            relations: vec![],
        }
    }

    #[test]
    fn two_second_translation_renders_120_frames_with_exact_endpoint() {
        let (scene, trace) = render_trace(&base_spec(MotionKind::Translate), None).unwrap();
        assert_eq!(trace.num_frames, 120);
        let center = scene.objects[0].bbox_local.center();
        let first = trace.matrix(0, 1).apply(center.0, center.1);
        assert_eq!(first, center);
        let last = trace.matrix(0, 120).apply(center.0, center.1);
        // 100 px upward on screen means -100 in y.
        assert!((last.0 - center.0).abs() < 1e-9);
        assert!((last.1 - (center.1 - 100.0)).abs() < 1e-9);
    }

    #[test]
    fn corner_rotation_final_matrix_matches_closed_form() {
        let (scene, trace) = render_trace(&base_spec(MotionKind::Rotate), None).unwrap();
        let bb = &scene.objects[0].bbox_local;
        let expected = Affine::rotate_about(90.0, bb.xmax, bb.ymax);
        assert!(trace.matrix(0, 120).max_abs_diff(&expected) < 1e-9);
    }

    #[test]
    fn eased_scale_hits_exact_final_ratio() {
        let mut spec = base_spec(MotionKind::Scale);
        spec.motions[0].easing = Easing::EaseInOut;
        let (_, trace) = render_trace(&spec, None).unwrap();
        let final_m = trace.matrix(0, 120);
        let d = crate::motion::decompose(final_m).unwrap();
        assert!((d.scale.0 - 2.0).abs() < 1e-9);
        assert!((d.scale.1 - 2.0).abs() < 1e-9);
    }

    #[test]
    fn empty_motion_list_renders_identity() {
        let mut spec = base_spec(MotionKind::Translate);
        spec.motions.clear();
        spec.duration = Some(1.0);
        let (_, trace) = render_trace(&spec, None).unwrap();
        assert_eq!(trace.num_frames, 60);
        assert!(trace.frames[0].iter().all(|m| *m == Affine::IDENTITY));
    }

    #[test]
    fn misaligned_start_is_rejected() {
        let mut spec = base_spec(MotionKind::Translate);
        spec.motions[0].start = 0.013;
        assert!(matches!(
            render_trace(&spec, None),
            Err(HarnessError::InvalidSpec(_))
        ));
    }
}
