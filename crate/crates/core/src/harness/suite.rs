//! The shipped spec corpus: 12 single-atomic, 14 spatially relative,
//! 12 temporally relative, and 18 spatio-temporally relative animations.
//!
//! The seed varies colors and applies a whole-scene position offset, which
//! preserves every relative-geometry invariant the post conditions depend
//! on. Layout rules the corpus follows so that every ground-truth program
//! verifies against its own rendering:
//!
//! * duration checks only on linear-eased motions (eased runs lose edge
//!   frames below the activity thresholds);
//! * percent origin checks only where the fixed point tracks the current
//!   world bbox (scales, and center rotations of an unmoved object);
//!   point rotations use absolute px origins;
//! * motions with a post condition do not also check magnitude, so the
//!   overshoot/undershoot perturbation flips post alone;
//! * concurrent same-object motions list rotate/scale before translate,
//!   composing the translation outermost;
//! * non-uniform scales only apply to unrotated objects (no shear).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    AtomicMotionSpec, DirectionSpec, Easing, MagnitudeSpec, MotionKind, OriginCoord, PostSpec,
    RelationKind, SceneGraphSpec, SpecObject, TemporalConstraint,
};

const COLORS: &[&str] = &[
    "black", "blue", "red", "orange", "green", "purple", "teal", "navy", "brown", "crimson",
    "gold", "indigo", "maroon", "olive", "coral", "hotpink", "steelblue", "darkcyan",
];

struct Builder {
    spec: SceneGraphSpec,
    color_offset: usize,
    color_cursor: usize,
    dx: f64,
    dy: f64,
}

impl Builder {
    fn new(name: &str, rng: &mut ChaCha8Rng) -> Builder {
        Builder {
            spec: SceneGraphSpec {
                name: name.to_string(),
                fps: 60.0,
                duration: None,
                objects: Vec::new(),
                motions: Vec::new(),
                relations: Vec::new(),
            },
            color_offset: rng.random_range(0..COLORS.len()),
            color_cursor: 0,
            // Whole-scene offset: keeps all relative geometry intact.
            dx: rng.random_range(-3..=3) as f64 * 10.0,
            dy: rng.random_range(-3..=3) as f64 * 10.0,
        }
    }

    fn obj(&mut self, id: &str, shape: &str, x: f64, y: f64, w: f64, h: f64) -> &mut Self {
        let color = COLORS[(self.color_offset + self.color_cursor) % COLORS.len()];
        self.color_cursor += 1;
        self.spec.objects.push(SpecObject {
            id: id.to_string(),
            shape: shape.to_string(),
            color: color.to_string(),
            bbox: [x + self.dx, y + self.dy, w, h],
        });
        self
    }

    fn object_bbox(&self, id: &str) -> [f64; 4] {
        self.spec.object(id).expect("object declared").bbox
    }

    fn push(
        &mut self,
        id: &str,
        agent: &str,
        kind: MotionKind,
        direction: DirectionSpec,
        magnitude: MagnitudeSpec,
        origin: Option<[OriginCoord; 2]>,
        start: f64,
        duration: f64,
        easing: Easing,
        checks: &[&str],
    ) -> &mut Self {
        self.spec.motions.push(AtomicMotionSpec {
            id: id.to_string(),
            agent: agent.to_string(),
            kind,
            direction: Some(direction),
            magnitude: Some(magnitude),
            origin,
            duration,
            start,
            easing,
            post: None,
            checks: Some(checks.iter().map(|s| s.to_string()).collect()),
        });
        self
    }

    fn translate(
        &mut self,
        id: &str,
        agent: &str,
        dir: [f64; 2],
        mag: f64,
        start: f64,
        duration: f64,
        easing: Easing,
        checks: &[&str],
    ) -> &mut Self {
        self.push(
            id,
            agent,
            MotionKind::Translate,
            DirectionSpec::Vector(dir),
            MagnitudeSpec::Scalar(mag),
            None,
            start,
            duration,
            easing,
            checks,
        )
    }

    fn rotate(
        &mut self,
        id: &str,
        agent: &str,
        clockwise: bool,
        degrees: f64,
        origin: [OriginCoord; 2],
        start: f64,
        duration: f64,
        easing: Easing,
        checks: &[&str],
    ) -> &mut Self {
        let sense = if clockwise { "clockwise" } else { "counterclockwise" };
        self.push(
            id,
            agent,
            MotionKind::Rotate,
            DirectionSpec::Named(sense.to_string()),
            MagnitudeSpec::Scalar(degrees),
            Some(origin),
            start,
            duration,
            easing,
            checks,
        )
    }

    fn scale(
        &mut self,
        id: &str,
        agent: &str,
        ratios: [f64; 2],
        origin: [OriginCoord; 2],
        start: f64,
        duration: f64,
        easing: Easing,
        checks: &[&str],
    ) -> &mut Self {
        let sign = |r: f64| {
            if r > 1.0 {
                1.0
            } else if r < 1.0 {
                -1.0
            } else {
                0.0
            }
        };
        self.push(
            id,
            agent,
            MotionKind::Scale,
            DirectionSpec::Vector([sign(ratios[0]), sign(ratios[1])]),
            MagnitudeSpec::Pair(ratios),
            Some(origin),
            start,
            duration,
            easing,
            checks,
        )
    }

    /// Attach a post condition to the most recent motion.
    fn with_post(&mut self, relation: &str, reference: &str) -> &mut Self {
        let m = self.spec.motions.last_mut().expect("motion pushed");
        m.post = Some(PostSpec {
            relation: relation.to_string(),
            reference: reference.to_string(),
        });
        if let Some(checks) = &mut m.checks {
            checks.push("post".to_string());
        }
        self
    }

    fn relate(&mut self, kind: RelationKind, a: &str, b: &str) -> &mut Self {
        self.spec.relations.push(TemporalConstraint {
            kind,
            a: a.to_string(),
            b: b.to_string(),
        });
        self
    }

    fn build(&mut self) -> SceneGraphSpec {
        let spec = self.spec.clone();
        spec.validate()
            .unwrap_or_else(|e| panic!("suite spec {:?} is invalid: {e}", spec.name));
        spec
    }
}

fn center_origin() -> [OriginCoord; 2] {
    [OriginCoord::Percent(50.0), OriginCoord::Percent(50.0)]
}

/// Displacement moving `a` rightward until its right edge meets `b`'s
/// left edge.
fn gap_right(a: [f64; 4], b: [f64; 4]) -> f64 {
    b[0] - (a[0] + a[2])
}

/// Displacement moving `a` leftward until its left edge meets `b`'s right
/// edge.
fn gap_left(a: [f64; 4], b: [f64; 4]) -> f64 {
    a[0] - (b[0] + b[2])
}

/// Displacement moving `a` downward until its bottom meets `b`'s top.
fn gap_down(a: [f64; 4], b: [f64; 4]) -> f64 {
    b[1] - (a[1] + a[3])
}

/// Displacement moving `a` upward until its top meets `b`'s bottom.
fn gap_up(a: [f64; 4], b: [f64; 4]) -> f64 {
    a[1] - (b[1] + b[3])
}

/// Round a displacement so contact frames land exactly on the grid.
fn snap(v: f64) -> f64 {
    v.round()
}

/// Build the default 56-spec corpus. The same seed always produces the
/// same corpus.
pub fn default_suite(seed: u64) -> Vec<SceneGraphSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut specs = Vec::with_capacity(56);
    specs.extend(single_atomic(&mut rng));
    specs.extend(spatially_relative(&mut rng));
    specs.extend(temporally_relative(&mut rng));
    specs.extend(spatio_temporal(&mut rng));
    assert_eq!(specs.len(), 56);
    specs
}

/// Names of the shipped specs, grouped by category prefix.
pub fn suite_spec_names(seed: u64) -> Vec<String> {
    default_suite(seed).iter().map(|s| s.name.clone()).collect()
}

fn single_atomic(rng: &mut ChaCha8Rng) -> Vec<SceneGraphSpec> {
    let full: &[&str] = &["direction", "magnitude", "duration"];
    let no_dur: &[&str] = &["direction", "magnitude"];
    let with_orig: &[&str] = &["direction", "magnitude", "origin", "duration"];
    let orig_no_dur: &[&str] = &["direction", "magnitude", "origin"];
    let mut specs = Vec::new();

    let mut b = Builder::new("single_01_translate_up_square", rng);
    b.obj("sq", "square", 300.0, 400.0, 80.0, 80.0)
        .translate("m_1", "sq", [0.0, 1.0], 100.0, 0.0, 1.0, Easing::Linear, full);
    specs.push(b.build());

    let mut b = Builder::new("single_02_translate_right_circle_eased", rng);
    b.obj("ci", "circle", 120.0, 250.0, 70.0, 70.0)
        .translate("m_1", "ci", [1.0, 0.0], 150.0, 0.0, 1.5, Easing::EaseInOut, no_dur);
    specs.push(b.build());

    let mut b = Builder::new("single_03_translate_diagonal_rectangle", rng);
    b.obj("re", "rectangle", 150.0, 420.0, 120.0, 60.0)
        .translate("m_1", "re", [1.0, 1.0], 120.0, 0.0, 2.0, Easing::Linear, full);
    specs.push(b.build());

    let mut b = Builder::new("single_04_translate_left_ellipse", rng);
    b.obj("el", "ellipse", 500.0, 300.0, 100.0, 60.0)
        .translate("m_1", "el", [-1.0, 0.0], 80.0, 0.0, 0.5, Easing::Linear, full);
    specs.push(b.build());

    let mut b = Builder::new("single_05_rotate_cw_letter_center", rng);
    b.obj("H", "letter", 350.0, 250.0, 50.0, 70.0)
        .rotate("m_1", "H", true, 90.0, center_origin(), 0.0, 1.0, Easing::Linear, with_orig);
    specs.push(b.build());

    let mut b = Builder::new("single_06_rotate_ccw_square_about_point", rng);
    b.obj("sq", "square", 260.0, 180.0, 80.0, 80.0).rotate(
        "m_1",
        "sq",
        false,
        45.0,
        [OriginCoord::Px(400.0), OriginCoord::Px(300.0)],
        0.0,
        1.0,
        Easing::Linear,
        with_orig,
    );
    specs.push(b.build());

    let mut b = Builder::new("single_07_rotate_cw_triangle_eased", rng);
    b.obj("tr", "triangle", 280.0, 280.0, 90.0, 80.0).rotate(
        "m_1",
        "tr",
        true,
        180.0,
        center_origin(),
        0.0,
        2.0,
        Easing::EaseInOut,
        orig_no_dur,
    );
    specs.push(b.build());

    let mut b = Builder::new("single_08_scale_up_circle_center", rng);
    b.obj("ci", "circle", 330.0, 230.0, 70.0, 70.0).scale(
        "m_1",
        "ci",
        [2.0, 2.0],
        center_origin(),
        0.0,
        0.25,
        Easing::Linear,
        with_orig,
    );
    specs.push(b.build());

    let mut b = Builder::new("single_09_scale_down_square_center", rng);
    b.obj("sq", "square", 300.0, 300.0, 100.0, 100.0).scale(
        "m_1",
        "sq",
        [0.5, 0.5],
        center_origin(),
        0.0,
        1.0,
        Easing::Linear,
        with_orig,
    );
    specs.push(b.build());

    let mut b = Builder::new("single_10_scale_x_rectangle", rng);
    b.obj("re", "rectangle", 250.0, 350.0, 120.0, 60.0).scale(
        "m_1",
        "re",
        [2.5, 1.0],
        center_origin(),
        0.0,
        1.0,
        Easing::Linear,
        with_orig,
    );
    specs.push(b.build());

    let mut b = Builder::new("single_11_scale_corner_rectangle", rng);
    b.obj("re", "rectangle", 200.0, 200.0, 110.0, 70.0).scale(
        "m_1",
        "re",
        [1.5, 1.5],
        [OriginCoord::Percent(0.0), OriginCoord::Percent(0.0)],
        0.0,
        1.0,
        Easing::Linear,
        with_orig,
    );
    specs.push(b.build());

    let mut b = Builder::new("single_12_translate_up_letter_eased", rng);
    b.obj("A", "letter", 420.0, 460.0, 50.0, 70.0)
        .translate("m_1", "A", [0.0, 1.0], 200.0, 0.0, 4.0, Easing::EaseInOut, no_dur);
    specs.push(b.build());

    specs
}

fn spatially_relative(rng: &mut ChaCha8Rng) -> Vec<SceneGraphSpec> {
    let post_checks: &[&str] = &["direction", "duration"];
    let post_checks_eased: &[&str] = &["direction"];
    let mut specs = Vec::new();

    // Contact posts: the motion ends exactly flush with the reference.
    let mut b = Builder::new("spatial_01_left_border_contact", rng);
    b.obj("mover", "square", 100.0, 200.0, 60.0, 80.0)
        .obj("anchor", "rectangle", 300.0, 200.0, 50.0, 80.0);
    let d = snap(gap_right(b.object_bbox("mover"), b.object_bbox("anchor")));
    b.translate("m_1", "mover", [1.0, 0.0], d, 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("left_border", "anchor");
    specs.push(b.build());

    let mut b = Builder::new("spatial_02_right_border_contact", rng);
    b.obj("mover", "square", 420.0, 220.0, 60.0, 80.0)
        .obj("anchor", "rectangle", 200.0, 220.0, 50.0, 80.0);
    let d = snap(gap_left(b.object_bbox("mover"), b.object_bbox("anchor")));
    b.translate("m_1", "mover", [-1.0, 0.0], d, 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("right_border", "anchor");
    specs.push(b.build());

    let mut b = Builder::new("spatial_03_top_border_contact", rng);
    b.obj("mover", "rectangle", 220.0, 100.0, 80.0, 60.0)
        .obj("anchor", "rectangle", 220.0, 350.0, 80.0, 60.0);
    let d = snap(gap_down(b.object_bbox("mover"), b.object_bbox("anchor")));
    b.translate("m_1", "mover", [0.0, -1.0], d, 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("top_border", "anchor");
    specs.push(b.build());

    let mut b = Builder::new("spatial_04_bottom_border_contact", rng);
    b.obj("mover", "rectangle", 220.0, 400.0, 80.0, 60.0)
        .obj("anchor", "rectangle", 220.0, 150.0, 80.0, 60.0);
    let d = snap(gap_up(b.object_bbox("mover"), b.object_bbox("anchor")));
    b.translate("m_1", "mover", [0.0, 1.0], d, 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("bottom_border", "anchor");
    specs.push(b.build());

    // Region posts: the motion carries well past the threshold, so the
    // half-magnitude perturbation stops short of it.
    let mut b = Builder::new("spatial_05_top_region", rng);
    b.obj("mover", "circle", 300.0, 300.0, 60.0, 60.0)
        .obj("anchor", "rectangle", 290.0, 180.0, 80.0, 50.0);
    let need = b.object_bbox("mover")[1] - (b.object_bbox("anchor")[1] - 2.0);
    b.translate("m_1", "mover", [0.0, 1.0], snap(need + 40.0), 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("top", "anchor");
    specs.push(b.build());

    let mut b = Builder::new("spatial_06_bottom_region", rng);
    b.obj("mover", "circle", 300.0, 150.0, 60.0, 60.0)
        .obj("anchor", "rectangle", 290.0, 260.0, 80.0, 50.0);
    let a = b.object_bbox("mover");
    let r = b.object_bbox("anchor");
    let need = (r[1] + r[3] + 2.0) - (a[1] + a[3]);
    b.translate("m_1", "mover", [0.0, -1.0], snap(need + 40.0), 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("bottom", "anchor");
    specs.push(b.build());

    let mut b = Builder::new("spatial_07_left_region", rng);
    b.obj("mover", "square", 400.0, 250.0, 70.0, 70.0)
        .obj("anchor", "ellipse", 260.0, 240.0, 90.0, 60.0);
    let need = b.object_bbox("mover")[0] - (b.object_bbox("anchor")[0] - 2.0);
    b.translate("m_1", "mover", [-1.0, 0.0], snap(need + 40.0), 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("left", "anchor");
    specs.push(b.build());

    let mut b = Builder::new("spatial_08_right_region", rng);
    b.obj("mover", "square", 100.0, 300.0, 60.0, 60.0)
        .obj("anchor", "rectangle", 320.0, 300.0, 70.0, 60.0);
    let a = b.object_bbox("mover");
    let r = b.object_bbox("anchor");
    let need = (r[0] + r[2] + 2.0) - (a[0] + a[2]);
    b.translate("m_1", "mover", [1.0, 0.0], snap(need + 40.0), 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("right", "anchor");
    specs.push(b.build());

    let mut b = Builder::new("spatial_09_intersect_overlap", rng);
    b.obj("mover", "square", 100.0, 280.0, 60.0, 60.0)
        .obj("anchor", "square", 310.0, 280.0, 60.0, 60.0);
    let d = snap(gap_right(b.object_bbox("mover"), b.object_bbox("anchor")) + 20.0);
    b.translate("m_1", "mover", [1.0, 0.0], d, 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("intersect", "anchor");
    specs.push(b.build());

    let mut b = Builder::new("spatial_10_border_contact", rng);
    b.obj("mover", "circle", 120.0, 260.0, 64.0, 64.0)
        .obj("anchor", "square", 330.0, 260.0, 64.0, 64.0);
    let d = snap(gap_right(b.object_bbox("mover"), b.object_bbox("anchor")));
    b.translate("m_1", "mover", [1.0, 0.0], d, 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("border", "anchor");
    specs.push(b.build());

    let mut b = Builder::new("spatial_11_bottom_flush_alignment", rng);
    b.obj("mover", "rectangle", 200.0, 100.0, 60.0, 50.0)
        .obj("anchor", "rectangle", 260.0, 300.0, 60.0, 80.0);
    let a = b.object_bbox("mover");
    let r = b.object_bbox("anchor");
    let d = snap((r[1] + r[3]) - (a[1] + a[3]));
    b.translate("m_1", "mover", [0.0, -1.0], d, 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("bottom_border_flush", "anchor");
    specs.push(b.build());

    let mut b = Builder::new("spatial_12_left_border_letters", rng);
    b.obj("Y", "letter", 80.0, 240.0, 46.0, 64.0)
        .obj("E", "letter", 320.0, 240.0, 46.0, 64.0);
    let d = snap(gap_right(b.object_bbox("Y"), b.object_bbox("E")));
    b.translate("m_1", "Y", [1.0, 0.0], d, 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("left_border", "E");
    specs.push(b.build());

    let mut b = Builder::new("spatial_13_top_border_ellipse_eased", rng);
    b.obj("mover", "ellipse", 250.0, 120.0, 90.0, 56.0)
        .obj("anchor", "rectangle", 240.0, 360.0, 110.0, 60.0);
    let d = snap(gap_down(b.object_bbox("mover"), b.object_bbox("anchor")));
    b.translate("m_1", "mover", [0.0, -1.0], d, 0.0, 2.0, Easing::EaseInOut, post_checks_eased)
        .with_post("top_border", "anchor");
    specs.push(b.build());

    let mut b = Builder::new("spatial_14_intersect_diagonal", rng);
    b.obj("mover", "square", 100.0, 100.0, 60.0, 60.0)
        .obj("anchor", "square", 320.0, 320.0, 60.0, 60.0);
    let a = b.object_bbox("mover");
    let r = b.object_bbox("anchor");
    let dx = (r[0] + r[2] / 2.0) - (a[0] + a[2] / 2.0);
    let dy = (r[1] + r[3] / 2.0) - (a[1] + a[3] / 2.0);
    // Down-right on screen is [1, -1] in y-up logical coordinates.
    let d = snap(dx.hypot(dy));
    b.translate("m_1", "mover", [1.0, -1.0], d, 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("intersect", "anchor");
    specs.push(b.build());

    assert_eq!(specs.len(), 14);
    specs
}

fn temporally_relative(rng: &mut ChaCha8Rng) -> Vec<SceneGraphSpec> {
    let full: &[&str] = &["direction", "magnitude", "duration"];
    let with_orig: &[&str] = &["direction", "magnitude", "origin", "duration"];
    let no_orig: &[&str] = &["direction", "magnitude", "duration"];
    let mut specs = Vec::new();

    // Same object: rotate about its center, then translate away.
    let mut b = Builder::new("temporal_01_rotate_then_translate_same_object", rng);
    b.obj("sq", "square", 300.0, 350.0, 80.0, 80.0)
        .rotate("m_1", "sq", true, 90.0, center_origin(), 0.0, 1.0, Easing::Linear, with_orig)
        .translate("m_2", "sq", [0.0, 1.0], 100.0, 1.0, 1.0, Easing::Linear, full)
        .relate(RelationKind::Before, "m_1", "m_2");
    specs.push(b.build());

    // The same object rotating about its own center while translating.
    let mut b = Builder::new("temporal_02_rotate_while_translate_same_object", rng);
    b.obj("sq", "square", 150.0, 300.0, 80.0, 80.0)
        .rotate(
            "m_1",
            "sq",
            true,
            90.0,
            center_origin(),
            0.0,
            2.0,
            Easing::Linear,
            &["direction", "magnitude"],
        )
        .translate("m_2", "sq", [1.0, 0.0], 150.0, 0.0, 2.0, Easing::Linear, &["direction", "magnitude"])
        .relate(RelationKind::While, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("temporal_03_translate_before_scale_two_objects", rng);
    b.obj("a", "square", 150.0, 400.0, 70.0, 70.0)
        .obj("b", "circle", 420.0, 240.0, 80.0, 80.0)
        .translate("m_1", "a", [0.0, 1.0], 110.0, 0.0, 1.0, Easing::Linear, full)
        .scale("m_2", "b", [2.0, 2.0], center_origin(), 1.5, 1.0, Easing::Linear, with_orig)
        .relate(RelationKind::Before, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("temporal_04_translate_while_scale_two_objects", rng);
    b.obj("a", "rectangle", 120.0, 200.0, 110.0, 60.0)
        .obj("b", "ellipse", 430.0, 330.0, 90.0, 60.0)
        .translate("m_1", "a", [1.0, 0.0], 140.0, 0.0, 2.0, Easing::Linear, full)
        .scale("m_2", "b", [0.5, 0.5], center_origin(), 0.5, 1.0, Easing::Linear, with_orig)
        .relate(RelationKind::While, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("temporal_05_three_motion_chain", rng);
    b.obj("a", "square", 120.0, 380.0, 60.0, 60.0)
        .obj("b", "circle", 330.0, 220.0, 70.0, 70.0)
        .obj("c", "rectangle", 500.0, 380.0, 100.0, 50.0)
        .translate("m_1", "a", [0.0, 1.0], 90.0, 0.0, 1.0, Easing::Linear, full)
        .rotate(
            "m_2",
            "b",
            false,
            120.0,
            center_origin(),
            1.25,
            1.0,
            Easing::Linear,
            with_orig,
        )
        .scale("m_3", "c", [1.6, 1.6], center_origin(), 2.5, 1.0, Easing::Linear, with_orig)
        .relate(RelationKind::Before, "m_1", "m_2")
        .relate(RelationKind::Before, "m_2", "m_3");
    specs.push(b.build());

    let mut b = Builder::new("temporal_06_rotate_before_rotate", rng);
    b.obj("a", "triangle", 180.0, 180.0, 90.0, 80.0)
        .obj("b", "letter", 430.0, 300.0, 50.0, 70.0)
        .rotate("m_1", "a", true, 90.0, center_origin(), 0.0, 1.0, Easing::Linear, with_orig)
        .rotate("m_2", "b", false, 45.0, center_origin(), 1.0, 1.0, Easing::Linear, with_orig)
        .relate(RelationKind::Before, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("temporal_07_translate_overlaps_rotate", rng);
    b.obj("a", "circle", 150.0, 250.0, 64.0, 64.0)
        .obj("b", "square", 420.0, 250.0, 76.0, 76.0)
        .translate("m_1", "a", [1.0, 0.0], 130.0, 0.0, 1.5, Easing::Linear, full)
        .rotate("m_2", "b", true, 75.0, center_origin(), 0.75, 1.25, Easing::Linear, with_orig)
        .relate(RelationKind::While, "m_1", "m_2");
    specs.push(b.build());

    // Uniform scale after a rotation of the same object: shear-free.
    let mut b = Builder::new("temporal_08_scale_after_rotate_same_object", rng);
    b.obj("sq", "square", 280.0, 280.0, 90.0, 90.0)
        .rotate("m_1", "sq", true, 90.0, center_origin(), 0.0, 1.0, Easing::Linear, with_orig)
        .scale(
            "m_2",
            "sq",
            [1.5, 1.5],
            center_origin(),
            1.0,
            1.0,
            Easing::Linear,
            &["direction", "magnitude", "duration"],
        )
        .relate(RelationKind::After, "m_2", "m_1");
    specs.push(b.build());

    let mut b = Builder::new("temporal_09_translate_after_translate", rng);
    b.obj("a", "square", 140.0, 200.0, 60.0, 60.0)
        .obj("b", "ellipse", 420.0, 400.0, 100.0, 56.0)
        .translate("m_1", "a", [1.0, 0.0], 120.0, 0.0, 1.0, Easing::Linear, full)
        .translate("m_2", "b", [0.0, 1.0], 90.0, 1.5, 1.0, Easing::Linear, full)
        .relate(RelationKind::After, "m_2", "m_1");
    specs.push(b.build());

    let mut b = Builder::new("temporal_10_rotation_contains_translate", rng);
    b.obj("a", "letter", 360.0, 200.0, 50.0, 70.0)
        .obj("b", "circle", 150.0, 380.0, 70.0, 70.0)
        .rotate("m_1", "a", false, 180.0, center_origin(), 0.0, 2.0, Easing::Linear, with_orig)
        .translate("m_2", "b", [1.0, 1.0], 100.0, 0.5, 1.0, Easing::Linear, full)
        .relate(RelationKind::While, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("temporal_11_mixed_while_and_before", rng);
    b.obj("a", "square", 130.0, 330.0, 70.0, 70.0)
        .obj("b", "rectangle", 330.0, 160.0, 110.0, 60.0)
        .obj("c", "circle", 520.0, 330.0, 64.0, 64.0)
        .translate("m_1", "a", [0.0, 1.0], 80.0, 0.0, 1.0, Easing::Linear, full)
        .rotate("m_2", "b", true, 60.0, center_origin(), 0.0, 1.0, Easing::Linear, with_orig)
        .scale("m_3", "c", [2.2, 2.2], center_origin(), 1.25, 1.0, Easing::Linear, no_orig)
        .relate(RelationKind::While, "m_1", "m_2")
        .relate(RelationKind::Before, "m_2", "m_3");
    specs.push(b.build());

    let mut b = Builder::new("temporal_12_letters_after_pair", rng);
    b.obj("Y", "letter", 200.0, 240.0, 46.0, 64.0)
        .obj("S", "letter", 400.0, 240.0, 46.0, 64.0)
        .translate("m_1", "S", [0.0, -1.0], 110.0, 0.0, 1.0, Easing::Linear, full)
        .rotate("m_2", "Y", false, 90.0, center_origin(), 1.0, 1.0, Easing::Linear, with_orig)
        .relate(RelationKind::After, "m_2", "m_1");
    specs.push(b.build());

    assert_eq!(specs.len(), 12);
    specs
}

fn spatio_temporal(rng: &mut ChaCha8Rng) -> Vec<SceneGraphSpec> {
    let post_checks: &[&str] = &["direction", "duration"];
    let full: &[&str] = &["direction", "magnitude", "duration"];
    let with_orig: &[&str] = &["direction", "magnitude", "origin", "duration"];
    let mut specs = Vec::new();

    // The two-mover bracket: one letter docks on each side of the anchor,
    // strictly in sequence.
    let mut b = Builder::new("st_01_dock_left_then_right", rng);
    b.obj("Y", "letter", 80.0, 240.0, 46.0, 64.0)
        .obj("S", "letter", 560.0, 240.0, 46.0, 64.0)
        .obj("E", "letter", 320.0, 240.0, 46.0, 64.0);
    let dy = snap(gap_right(b.object_bbox("Y"), b.object_bbox("E")));
    let ds = snap(gap_left(b.object_bbox("S"), b.object_bbox("E")));
    b.translate("m_1", "Y", [1.0, 0.0], dy, 0.0, 1.0, Easing::Linear, post_checks)
        .with_post("left_border", "E")
        .translate("m_2", "S", [-1.0, 0.0], ds, 1.0, 1.0, Easing::Linear, post_checks)
        .with_post("right_border", "E")
        .relate(RelationKind::Before, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("st_02_dock_both_sides_while", rng);
    b.obj("Y", "letter", 80.0, 240.0, 46.0, 64.0)
        .obj("S", "letter", 560.0, 240.0, 46.0, 64.0)
        .obj("E", "letter", 320.0, 240.0, 46.0, 64.0);
    let dy = snap(gap_right(b.object_bbox("Y"), b.object_bbox("E")));
    let ds = snap(gap_left(b.object_bbox("S"), b.object_bbox("E")));
    b.translate("m_1", "Y", [1.0, 0.0], dy, 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("left_border", "E")
        .translate("m_2", "S", [-1.0, 0.0], ds, 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("right_border", "E")
        .relate(RelationKind::While, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("st_03_land_then_spin", rng);
    b.obj("box", "square", 240.0, 100.0, 80.0, 60.0)
        .obj("floor", "rectangle", 220.0, 380.0, 120.0, 40.0)
        .obj("star", "triangle", 480.0, 200.0, 80.0, 80.0);
    let d = snap(gap_down(b.object_bbox("box"), b.object_bbox("floor")));
    b.translate("m_1", "box", [0.0, -1.0], d, 0.0, 1.0, Easing::Linear, post_checks)
        .with_post("top_border", "floor")
        .rotate("m_2", "star", true, 90.0, center_origin(), 1.0, 1.0, Easing::Linear, with_orig)
        .relate(RelationKind::Before, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("st_04_grow_into_then_rise", rng);
    b.obj("blob", "circle", 300.0, 300.0, 60.0, 60.0)
        .obj("target", "square", 370.0, 330.0, 60.0, 60.0)
        .obj("lift", "rectangle", 120.0, 420.0, 100.0, 50.0);
    b.scale(
        "m_1",
        "blob",
        [2.0, 2.0],
        center_origin(),
        0.0,
        1.0,
        Easing::Linear,
        &["direction", "duration"],
    )
    .with_post("intersect", "target")
    .translate("m_2", "lift", [0.0, 1.0], 120.0, 1.0, 1.0, Easing::Linear, full)
    .relate(RelationKind::Before, "m_1", "m_2");
    specs.push(b.build());

    // Two spinners about a shared pivot while a third drops flush against
    // a static base.
    let mut b = Builder::new("st_05_spin_pair_then_drop_flush", rng);
    b.obj("w1", "letter", 180.0, 300.0, 50.0, 64.0)
        .obj("w2", "letter", 400.0, 300.0, 50.0, 64.0)
        .obj("o", "letter", 300.0, 120.0, 50.0, 64.0)
        .obj("base", "letter", 302.0, 300.0, 46.0, 64.0);
    let pivot_x = 180.0 + b.dx;
    let pivot_y = 410.0 + b.dy;
    let om = b.object_bbox("o");
    let base = b.object_bbox("base");
    let d = snap((base[1] + base[3]) - (om[1] + om[3]));
    b.rotate(
        "m_1",
        "w1",
        false,
        30.0,
        [OriginCoord::Px(pivot_x), OriginCoord::Px(pivot_y)],
        0.0,
        1.0,
        Easing::Linear,
        full,
    )
    .rotate(
        "m_2",
        "w2",
        true,
        30.0,
        [OriginCoord::Px(pivot_x + 270.0), OriginCoord::Px(pivot_y)],
        0.0,
        1.0,
        Easing::Linear,
        full,
    )
    .translate("m_3", "o", [0.0, -1.0], d, 1.0, 1.0, Easing::Linear, post_checks)
    .with_post("bottom_border_flush", "base")
    .relate(RelationKind::While, "m_1", "m_2")
    .relate(RelationKind::After, "m_3", "m_1");
    specs.push(b.build());

    let mut b = Builder::new("st_06_dock_right_after_spin", rng);
    b.obj("mover", "square", 430.0, 250.0, 60.0, 60.0)
        .obj("anchor", "circle", 180.0, 250.0, 64.0, 64.0)
        .obj("spinner", "rectangle", 520.0, 420.0, 110.0, 50.0);
    let d = snap(gap_left(b.object_bbox("mover"), b.object_bbox("anchor")));
    b.rotate("m_1", "spinner", true, 120.0, center_origin(), 0.0, 1.0, Easing::Linear, with_orig)
        .translate("m_2", "mover", [-1.0, 0.0], d, 1.5, 1.0, Easing::Linear, post_checks)
        .with_post("right_border", "anchor")
        .relate(RelationKind::After, "m_2", "m_1");
    specs.push(b.build());

    let mut b = Builder::new("st_07_settle_bottom_while_spin", rng);
    b.obj("mover", "ellipse", 260.0, 400.0, 90.0, 56.0)
        .obj("anchor", "rectangle", 250.0, 150.0, 110.0, 60.0)
        .obj("side", "triangle", 520.0, 300.0, 80.0, 72.0);
    let d = snap(gap_up(b.object_bbox("mover"), b.object_bbox("anchor")));
    b.translate("m_1", "mover", [0.0, 1.0], d, 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("bottom_border", "anchor")
        .rotate("m_2", "side", false, 150.0, center_origin(), 0.5, 1.0, Easing::Linear, with_orig)
        .relate(RelationKind::While, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("st_08_rise_above_then_grow", rng);
    b.obj("mover", "circle", 300.0, 330.0, 56.0, 56.0)
        .obj("anchor", "square", 290.0, 200.0, 76.0, 76.0)
        .obj("grower", "rectangle", 120.0, 430.0, 100.0, 50.0);
    let need = b.object_bbox("mover")[1] - (b.object_bbox("anchor")[1] - 2.0);
    b.translate("m_1", "mover", [0.0, 1.0], snap(need + 50.0), 0.0, 1.0, Easing::Linear, post_checks)
        .with_post("top", "anchor")
        .scale("m_2", "grower", [1.8, 1.8], center_origin(), 1.25, 1.0, Easing::Linear, with_orig)
        .relate(RelationKind::Before, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("st_09_slide_left_of_while_shrink", rng);
    b.obj("mover", "square", 430.0, 260.0, 64.0, 64.0)
        .obj("anchor", "ellipse", 260.0, 250.0, 90.0, 60.0)
        .obj("shrinker", "circle", 540.0, 420.0, 80.0, 80.0);
    let need = b.object_bbox("mover")[0] - (b.object_bbox("anchor")[0] - 2.0);
    b.translate("m_1", "mover", [-1.0, 0.0], snap(need + 45.0), 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("left", "anchor")
        .scale("m_2", "shrinker", [0.5, 0.5], center_origin(), 0.5, 1.0, Easing::Linear, with_orig)
        .relate(RelationKind::While, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("st_10_intersect_chain_of_three", rng);
    b.obj("mover", "square", 110.0, 290.0, 60.0, 60.0)
        .obj("anchor", "square", 330.0, 290.0, 60.0, 60.0)
        .obj("second", "circle", 510.0, 180.0, 64.0, 64.0)
        .obj("third", "rectangle", 510.0, 400.0, 100.0, 50.0);
    let d = snap(gap_right(b.object_bbox("mover"), b.object_bbox("anchor")) + 24.0);
    b.translate("m_1", "mover", [1.0, 0.0], d, 0.0, 1.0, Easing::Linear, post_checks)
        .with_post("intersect", "anchor")
        .rotate("m_2", "second", true, 90.0, center_origin(), 1.25, 1.0, Easing::Linear, with_orig)
        .translate("m_3", "third", [0.0, 1.0], 100.0, 2.5, 1.0, Easing::Linear, full)
        .relate(RelationKind::Before, "m_1", "m_2")
        .relate(RelationKind::Before, "m_2", "m_3");
    specs.push(b.build());

    let mut b = Builder::new("st_11_touch_border_after_drop", rng);
    b.obj("mover", "circle", 140.0, 260.0, 60.0, 60.0)
        .obj("anchor", "rectangle", 340.0, 255.0, 80.0, 70.0)
        .obj("dropper", "square", 520.0, 120.0, 70.0, 70.0);
    let d = snap(gap_right(b.object_bbox("mover"), b.object_bbox("anchor")));
    b.translate("m_1", "dropper", [0.0, -1.0], 130.0, 0.0, 1.0, Easing::Linear, full)
        .translate("m_2", "mover", [1.0, 0.0], d, 1.5, 1.0, Easing::Linear, post_checks)
        .with_post("border", "anchor")
        .relate(RelationKind::After, "m_2", "m_1");
    specs.push(b.build());

    let mut b = Builder::new("st_12_double_dock_sequential", rng);
    b.obj("left", "square", 90.0, 250.0, 60.0, 60.0)
        .obj("right", "square", 540.0, 250.0, 60.0, 60.0)
        .obj("anchor", "rectangle", 300.0, 245.0, 90.0, 70.0);
    let dl = snap(gap_right(b.object_bbox("left"), b.object_bbox("anchor")));
    let dr = snap(gap_left(b.object_bbox("right"), b.object_bbox("anchor")));
    b.translate("m_1", "left", [1.0, 0.0], dl, 0.0, 1.0, Easing::Linear, post_checks)
        .with_post("left_border", "anchor")
        .translate("m_2", "right", [-1.0, 0.0], dr, 1.25, 1.0, Easing::Linear, post_checks)
        .with_post("right_border", "anchor")
        .relate(RelationKind::Before, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("st_13_sink_below_then_slide", rng);
    b.obj("mover", "ellipse", 280.0, 160.0, 90.0, 56.0)
        .obj("anchor", "square", 290.0, 280.0, 70.0, 70.0)
        .obj("slider", "rectangle", 100.0, 430.0, 100.0, 50.0);
    let a = b.object_bbox("mover");
    let r = b.object_bbox("anchor");
    let need = (r[1] + r[3] + 2.0) - (a[1] + a[3]);
    b.translate("m_1", "mover", [0.0, -1.0], snap(need + 50.0), 0.0, 1.0, Easing::Linear, post_checks)
        .with_post("bottom", "anchor")
        .translate("m_2", "slider", [1.0, 0.0], 150.0, 1.5, 1.5, Easing::Linear, full)
        .relate(RelationKind::Before, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("st_14_pass_right_while_turn", rng);
    b.obj("mover", "square", 120.0, 300.0, 56.0, 56.0)
        .obj("anchor", "rectangle", 330.0, 300.0, 80.0, 56.0)
        .obj("turner", "letter", 540.0, 180.0, 50.0, 70.0);
    let a = b.object_bbox("mover");
    let r = b.object_bbox("anchor");
    let need = (r[0] + r[2] + 2.0) - (a[0] + a[2]);
    b.translate("m_1", "mover", [1.0, 0.0], snap(need + 60.0), 0.0, 2.0, Easing::Linear, post_checks)
        .with_post("right", "anchor")
        .rotate("m_2", "turner", true, 180.0, center_origin(), 0.5, 1.0, Easing::Linear, with_orig)
        .relate(RelationKind::While, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("st_15_stack_letters_in_order", rng);
    b.obj("T", "letter", 120.0, 120.0, 46.0, 64.0)
        .obj("base", "rectangle", 250.0, 380.0, 120.0, 44.0)
        .obj("I", "letter", 540.0, 120.0, 30.0, 64.0);
    let dt = snap(gap_down(b.object_bbox("T"), b.object_bbox("base")));
    let di = snap(gap_down(b.object_bbox("I"), b.object_bbox("base")));
    b.translate("m_1", "T", [0.0, -1.0], dt, 0.0, 1.0, Easing::Linear, post_checks)
        .with_post("top_border", "base")
        .translate("m_2", "I", [0.0, -1.0], di, 1.5, 1.0, Easing::Linear, post_checks)
        .with_post("top_border", "base")
        .relate(RelationKind::Before, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("st_16_dock_left_long_duration", rng);
    b.obj("mover", "rectangle", 100.0, 220.0, 90.0, 56.0)
        .obj("anchor", "square", 420.0, 215.0, 66.0, 66.0)
        .obj("waver", "circle", 560.0, 420.0, 60.0, 60.0);
    let d = snap(gap_right(b.object_bbox("mover"), b.object_bbox("anchor")));
    b.translate("m_1", "mover", [1.0, 0.0], d, 0.0, 3.0, Easing::Linear, post_checks)
        .with_post("left_border", "anchor")
        .translate("m_2", "waver", [0.0, 1.0], 70.0, 3.5, 0.5, Easing::Linear, full)
        .relate(RelationKind::Before, "m_1", "m_2");
    specs.push(b.build());

    let mut b = Builder::new("st_17_overlap_after_shrink", rng);
    b.obj("mover", "circle", 480.0, 300.0, 60.0, 60.0)
        .obj("anchor", "square", 200.0, 295.0, 70.0, 70.0)
        .obj("shrinker", "ellipse", 120.0, 130.0, 100.0, 60.0);
    let d = snap(gap_left(b.object_bbox("mover"), b.object_bbox("anchor")) + 25.0);
    b.scale("m_1", "shrinker", [0.6, 0.6], center_origin(), 0.0, 1.0, Easing::Linear, with_orig)
        .translate("m_2", "mover", [-1.0, 0.0], d, 1.5, 1.0, Easing::Linear, post_checks)
        .with_post("intersect", "anchor")
        .relate(RelationKind::After, "m_2", "m_1");
    specs.push(b.build());

    let mut b = Builder::new("st_18_flush_then_rotate_eased", rng);
    b.obj("mover", "rectangle", 180.0, 120.0, 70.0, 50.0)
        .obj("anchor", "rectangle", 250.0, 330.0, 80.0, 64.0)
        .obj("coda", "square", 500.0, 240.0, 70.0, 70.0);
    let a = b.object_bbox("mover");
    let r = b.object_bbox("anchor");
    let d = snap((r[1] + r[3]) - (a[1] + a[3]));
    b.translate("m_1", "mover", [0.0, -1.0], d, 0.0, 1.0, Easing::Linear, post_checks)
        .with_post("bottom_border_flush", "anchor")
        .rotate(
            "m_2",
            "coda",
            false,
            90.0,
            center_origin(),
            1.5,
            1.0,
            Easing::EaseInOut,
            &["direction", "magnitude", "origin"],
        )
        .relate(RelationKind::Before, "m_1", "m_2");
    specs.push(b.build());

    assert_eq!(specs.len(), 18);
    specs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_has_56_specs_in_category_counts() {
        let specs = default_suite(7);
        assert_eq!(specs.len(), 56);
        let count = |prefix: &str| specs.iter().filter(|s| s.name.starts_with(prefix)).count();
        assert_eq!(count("single_"), 12);
        assert_eq!(count("spatial_"), 14);
        assert_eq!(count("temporal_"), 12);
        assert_eq!(count("st_"), 18);
    }

    #[test]
    fn suite_is_deterministic_per_seed() {
        let a = default_suite(7);
        let b = default_suite(7);
        let c = default_suite(8);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_ne!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&c).unwrap()
        );
    }

    #[test]
    fn every_spec_compiles_and_renders() {
        for spec in default_suite(7) {
            let compiled = super::super::compile_program(&spec)
                .unwrap_or_else(|e| panic!("{}: {e}", spec.name));
            crate::lang::resolve(&crate::lang::parse(&compiled.text).unwrap())
                .unwrap_or_else(|e| panic!("{}: {e}", spec.name));
            super::super::render_trace(&spec, None)
                .unwrap_or_else(|e| panic!("{}: {e}", spec.name));
        }
    }
}
