//! Declarative animation specs: the engine's own oracle.
//!
//! A [`SceneGraphSpec`] describes a scene plus a list of atomic motions
//! (agent, type, direction, magnitude, origin, duration, start, easing,
//! optional post relation) and temporal constraints between motions. From
//! one spec the harness derives both sides of a verification pair:
//!
//! * [`compile_program`] emits the ground-truth program text, and
//! * [`render_trace`] produces an exact frame trace whose endpoints match
//!   the spec analytically.
//!
//! [`perturb`] mutates a spec so that the rendered trace fails exactly one
//! targeted predicate of the unperturbed program (plus that predicate's
//! dependency cone), which drives the targeted-failure test loop.

mod compile;
mod perturb;
mod render;
mod suite;

pub use compile::{compile_program, CompiledProgram};
pub use perturb::{
    applicable_perturbations, perturb, PerturbKind, PerturbOutcome, PerturbTarget, PredRef,
};
pub use render::render_trace;
pub use suite::{default_suite, suite_spec_names};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::parse_color;
use crate::scene::ShapeClass;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("invalid selector: {0}")]
    InvalidSelector(String),
}

fn default_fps() -> f64 {
    60.0
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneGraphSpec {
    pub name: String,
    #[serde(default = "default_fps")]
    pub fps: f64,
    /// Total animation length in seconds; defaults to the last motion end.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration: Option<f64>,
    pub objects: Vec<SpecObject>,
    pub motions: Vec<AtomicMotionSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<TemporalConstraint>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecObject {
    pub id: String,
    pub shape: String,
    pub color: String,
    /// `[x, y, w, h]` in px.
    pub bbox: [f64; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MotionKind {
    Translate,
    Rotate,
    Scale,
}

impl MotionKind {
    pub fn type_value(&self) -> &'static str {
        match self {
            MotionKind::Translate => "translate",
            MotionKind::Rotate => "rotate",
            MotionKind::Scale => "scale",
        }
    }
}

/// Direction of a motion: a 2-vector in y-up logical coordinates for
/// translation, sign pair for scale, or a named turn sense for rotation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DirectionSpec {
    Named(String),
    Vector([f64; 2]),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MagnitudeSpec {
    /// Px for translation, degrees for rotation.
    Scalar(f64),
    /// Target scale ratios per axis; 1.0 leaves an axis unchanged.
    Pair([f64; 2]),
}

/// One origin coordinate: absolute px or a percentage of the object box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OriginCoord {
    Px(f64),
    Percent(f64),
}

impl Serialize for OriginCoord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            OriginCoord::Px(v) => s.serialize_f64(*v),
            OriginCoord::Percent(p) => s.serialize_str(&format!("{}%", crate::lang::format_number(*p))),
        }
    }
}

impl<'de> Deserialize<'de> for OriginCoord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Number(n) => n
                .as_f64()
                .map(OriginCoord::Px)
                .ok_or_else(|| D::Error::custom("origin coordinate is not a finite number")),
            serde_json::Value::String(s) => s
                .strip_suffix('%')
                .and_then(|p| p.trim().parse::<f64>().ok())
                .map(OriginCoord::Percent)
                .ok_or_else(|| D::Error::custom(format!("bad origin coordinate {s:?}"))),
            other => Err(D::Error::custom(format!(
                "origin coordinate must be a number or percent string, got {other}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PostSpec {
    /// Spatial mask name, with or without the `s_` prefix.
    pub relation: String,
    pub reference: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Easing {
    #[default]
    Linear,
    EaseInOut,
}

impl Easing {
    /// Eased progress for `u` in [0, 1].
    pub fn apply(&self, u: f64) -> f64 {
        match self {
            Easing::Linear => u,
            Easing::EaseInOut => u * u * (3.0 - 2.0 * u),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomicMotionSpec {
    pub id: String,
    pub agent: String,
    #[serde(rename = "type")]
    pub kind: MotionKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<DirectionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub magnitude: Option<MagnitudeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<[OriginCoord; 2]>,
    pub duration: f64,
    #[serde(default)]
    pub start: f64,
    #[serde(default)]
    pub easing: Easing,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub post: Option<PostSpec>,
    /// Which predicates the ground-truth program asserts for this motion.
    /// Defaults to every attribute present on the spec.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
}

impl AtomicMotionSpec {
    pub fn end(&self) -> f64 {
        self.start + self.duration
    }

    /// Predicate names the compiled program asserts for this motion, in
    /// canonical order.
    pub fn emitted_checks(&self) -> Vec<&'static str> {
        let wanted: Option<Vec<&str>> = self
            .checks
            .as_ref()
            .map(|v| v.iter().map(String::as_str).collect());
        let mut out = Vec::new();
        let want = |name: &str| {
            wanted
                .as_ref()
                .map(|w| w.iter().any(|x| *x == name))
                .unwrap_or(true)
        };
        out.push("type");
        if self.direction.is_some() && want("direction") {
            out.push("direction");
        }
        if self.magnitude.is_some() && want("magnitude") {
            out.push("magnitude");
        }
        if self.origin.is_some() && want("origin") {
            out.push("origin");
        }
        if self.post.is_some() && want("post") {
            out.push("post");
        }
        if want("duration") {
            out.push("duration");
        }
        out.push("agent");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Before,
    While,
    After,
}

impl RelationKind {
    pub fn predicate(&self) -> &'static str {
        match self {
            RelationKind::Before => "t_before",
            RelationKind::While => "t_while",
            RelationKind::After => "t_after",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemporalConstraint {
    pub kind: RelationKind,
    pub a: String,
    pub b: String,
}

impl SceneGraphSpec {
    pub fn from_json(text: &str) -> Result<SceneGraphSpec, HarnessError> {
        let spec: SceneGraphSpec = serde_json::from_str(text)
            .map_err(|e| HarnessError::InvalidSpec(format!("bad spec JSON: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> Vec<u8> {
        crate::jsonfmt::to_canonical_json(self).expect("spec serialization cannot fail")
    }

    pub fn motion(&self, id: &str) -> Option<&AtomicMotionSpec> {
        self.motions.iter().find(|m| m.id == id)
    }

    pub fn object(&self, id: &str) -> Option<&SpecObject> {
        self.objects.iter().find(|o| o.id == id)
    }

    /// Total animation length in seconds.
    pub fn total_duration(&self) -> f64 {
        let motions_end = self.motions.iter().map(|m| m.end()).fold(0.0, f64::max);
        self.duration.unwrap_or(0.0).max(motions_end).max(1.0 / self.fps)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::InvalidSpec(msg));
        if !(self.fps.is_finite() && self.fps > 0.0) {
            return bad(format!("fps must be positive, got {}", self.fps));
        }
        for obj in &self.objects {
            if ShapeClass::from_name(&obj.shape).is_none() {
                return bad(format!("object {:?} has unknown shape {:?}", obj.id, obj.shape));
            }
            if parse_color(&obj.color).is_err() {
                return bad(format!("object {:?} has unknown color {:?}", obj.id, obj.color));
            }
            if obj.bbox[2] < 0.0 || obj.bbox[3] < 0.0 || (obj.bbox[2] == 0.0 && obj.bbox[3] == 0.0)
            {
                return bad(format!("object {:?} has a degenerate bbox", obj.id));
            }
        }

        let mut motion_ids = std::collections::BTreeSet::new();
        for m in &self.motions {
            if !motion_ids.insert(m.id.clone()) {
                return bad(format!("duplicate motion id {:?}", m.id));
            }
            if self.object(&m.agent).is_none() {
                return bad(format!("motion {:?} references unknown agent {:?}", m.id, m.agent));
            }
            if m.duration <= 0.0 {
                return bad(format!("motion {:?} must have positive duration", m.id));
            }
            if m.start < 0.0 {
                return bad(format!("motion {:?} must not start before zero", m.id));
            }
            match (m.kind, &m.direction, &m.magnitude) {
                (MotionKind::Translate, Some(DirectionSpec::Vector(v)), Some(MagnitudeSpec::Scalar(_))) => {
                    if v[0] == 0.0 && v[1] == 0.0 {
                        return bad(format!("motion {:?} has a zero direction vector", m.id));
                    }
                }
                (MotionKind::Translate, _, _) => {
                    return bad(format!(
                        "motion {:?}: translation needs a direction vector and a scalar magnitude",
                        m.id
                    ))
                }
                (MotionKind::Rotate, Some(DirectionSpec::Named(n)), Some(MagnitudeSpec::Scalar(_))) => {
                    if n != "clockwise" && n != "counterclockwise" {
                        return bad(format!("motion {:?} has unknown turn sense {n:?}", m.id));
                    }
                }
                (MotionKind::Rotate, _, _) => {
                    return bad(format!(
                        "motion {:?}: rotation needs \"clockwise\"/\"counterclockwise\" and a degree magnitude",
                        m.id
                    ))
                }
                (MotionKind::Scale, Some(DirectionSpec::Vector(d)), Some(MagnitudeSpec::Pair(r))) => {
                    for axis in 0..2 {
                        let consistent = match d[axis] {
                            x if x > 0.0 => r[axis] > 1.0,
                            x if x < 0.0 => r[axis] > 0.0 && r[axis] < 1.0,
                            _ => true,
                        };
                        if !consistent {
                            return bad(format!(
                                "motion {:?}: scale direction and ratio disagree on axis {axis}",
                                m.id
                            ));
                        }
                    }
                    if r[0] <= 0.0 || r[1] <= 0.0 {
                        return bad(format!("motion {:?}: scale ratios must be positive", m.id));
                    }
                }
                (MotionKind::Scale, _, _) => {
                    return bad(format!(
                        "motion {:?}: scale needs a sign-pair direction and a ratio pair",
                        m.id
                    ))
                }
            }
            if m.origin.is_some() && m.kind == MotionKind::Translate {
                return bad(format!("motion {:?}: translations have no origin", m.id));
            }
            if let Some(post) = &m.post {
                if self.object(&post.reference).is_none() {
                    return bad(format!(
                        "motion {:?} post references unknown object {:?}",
                        m.id, post.reference
                    ));
                }
                let mask_key = post.relation.strip_prefix("s_").unwrap_or(&post.relation);
                if crate::algebra::MaskRegistry::defaults().spatial(mask_key).is_none() {
                    return bad(format!(
                        "motion {:?} post references unknown relation {:?}",
                        m.id, post.relation
                    ));
                }
            }
        }

        for rel in &self.relations {
            for end in [&rel.a, &rel.b] {
                if self.motion(end).is_none() {
                    return bad(format!("relation references unknown motion {end:?}"));
                }
            }
            if rel.a == rel.b {
                return bad(format!("relation relates motion {:?} to itself", rel.a));
            }
        }

        // before/after constraints must be satisfiable: check the ordering
        // digraph for cycles.
        let mut edges: Vec<(String, String)> = Vec::new();
        for rel in &self.relations {
            match rel.kind {
                RelationKind::Before => edges.push((rel.a.clone(), rel.b.clone())),
                RelationKind::After => edges.push((rel.b.clone(), rel.a.clone())),
                RelationKind::While => {}
            }
        }
        let ids: Vec<&String> = motion_ids.iter().collect();
        let index = |id: &str| ids.iter().position(|x| x.as_str() == id).unwrap();
        let n = ids.len();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in &edges {
            adj[index(a)].push(index(b));
        }
        let mut state = vec![0u8; n];
        fn dfs(v: usize, adj: &[Vec<usize>], state: &mut [u8]) -> bool {
            state[v] = 1;
            for &w in &adj[v] {
                if state[w] == 1 || (state[w] == 0 && dfs(w, adj, state)) {
                    return true;
                }
            }
            state[v] = 2;
            false
        }
        for v in 0..n {
            if state[v] == 0 && dfs(v, &adj, &mut state) {
                return bad("before/after constraints form a cycle".to_string());
            }
        }

        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn simple_spec() -> SceneGraphSpec {
        SceneGraphSpec {
            name: "translate_up".into(),
            fps: 60.0,
            duration: None,
            objects: vec![SpecObject {
                id: "sq".into(),
                shape: "square".into(),
                color: "black".into(),
                bbox: [100.0, 400.0, 80.0, 80.0],
            }],
            motions: vec![AtomicMotionSpec {
                id: "m_1".into(),
                agent: "sq".into(),
                kind: MotionKind::Translate,
                direction: Some(DirectionSpec::Vector([0.0, 1.0])),
                magnitude: Some(MagnitudeSpec::Scalar(100.0)),
                origin: None,
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
    fn spec_json_roundtrip() {
        let spec = simple_spec();
        let json = spec.to_json();
        let parsed = SceneGraphSpec::from_json(std::str::from_utf8(&json).unwrap()).unwrap();
        assert_eq!(parsed.name, spec.name);
        assert_eq!(parsed.motions[0].magnitude, spec.motions[0].magnitude);
    }

    #[test]
    fn origin_coord_forms() {
        let c: OriginCoord = serde_json::from_str("\"50%\"").unwrap();
        assert_eq!(c, OriginCoord::Percent(50.0));
        let c: OriginCoord = serde_json::from_str("400.5").unwrap();
        assert_eq!(c, OriginCoord::Px(400.5));
        assert!(serde_json::from_str::<OriginCoord>("\"oops\"").is_err());
    }

    #[test]
    fn validation_rejects_unknown_agent() {
        let mut spec = simple_spec();
        spec.motions[0].agent = "ghost".into();
        assert!(matches!(spec.validate(), Err(HarnessError::InvalidSpec(_))));
    }

    #[test]
    fn validation_rejects_relation_cycle() {
        let mut spec = simple_spec();
        let mut m2 = spec.motions[0].clone();
        m2.id = "m_2".into();
        m2.start = 2.0;
        spec.motions.push(m2);
        spec.relations = vec![
            TemporalConstraint {
                kind: RelationKind::Before,
                a: "m_1".into(),
                b: "m_2".into(),
            },
            TemporalConstraint {
                kind: RelationKind::Before,
                a: "m_2".into(),
                b: "m_1".into(),
            },
        ];
        assert!(matches!(spec.validate(), Err(HarnessError::InvalidSpec(_))));
    }

    #[test]
    fn emitted_checks_follow_presence_and_selection() {
        let mut spec = simple_spec();
        assert_eq!(
            spec.motions[0].emitted_checks(),
            vec!["type", "direction", "magnitude", "duration", "agent"]
        );
        spec.motions[0].checks = Some(vec!["direction".into()]);
        assert_eq!(
            spec.motions[0].emitted_checks(),
            vec!["type", "direction", "agent"]
        );
    }
}
