//! Targeted spec perturbations for negative testing.
//!
//! Each perturbation mutates one attribute of a spec so that the rendered
//! trace fails exactly the targeted predicate of the *unperturbed*
//! ground-truth program, plus that predicate's dependency cone (the
//! statement value, temporal relations over a motion whose binding fails,
//! and the post condition downstream of a falsified conjunct).

use super::compile::compile_program;
use super::{
    DirectionSpec, HarnessError, MagnitudeSpec, MotionKind, RelationKind, SceneGraphSpec,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerturbTarget {
    Motion(String),
    Relation(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerturbKind {
    /// Reverse the motion direction (translate vector or turn sense).
    FlipDirection,
    /// Halve the net magnitude (ratios contract halfway toward 1).
    ScaleMagnitude,
    /// Halve the duration, keeping the net magnitude.
    HalveDuration,
    /// Move one motion of a relation so the relation no longer holds.
    ShiftStart,
    /// Swap the start times of a before/after pair.
    SwapOrder,
    /// Overshoot (contact relations) or undershoot (region relations) so
    /// the post condition fails at the end of the run.
    DropPost,
}

impl PerturbKind {
    pub fn name(&self) -> &'static str {
        match self {
            PerturbKind::FlipDirection => "flip-direction",
            PerturbKind::ScaleMagnitude => "scale-magnitude",
            PerturbKind::HalveDuration => "halve-duration",
            PerturbKind::ShiftStart => "shift-start",
            PerturbKind::SwapOrder => "swap-order",
            PerturbKind::DropPost => "drop-post",
        }
    }
}

/// Address of one expected truth value in the report: a predicate entry
/// (by name) within a statement, or the statement value itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredRef {
    pub statement: usize,
    /// `None` addresses the statement verdict.
    pub predicate: Option<String>,
}

impl PredRef {
    fn stmt(statement: usize) -> Self {
        PredRef {
            statement,
            predicate: None,
        }
    }

    fn pred(statement: usize, name: impl Into<String>) -> Self {
        PredRef {
            statement,
            predicate: Some(name.into()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PerturbOutcome {
    pub spec: SceneGraphSpec,
    pub description: String,
    /// Must flip from true to false.
    pub required_false: Vec<PredRef>,
    /// May flip; everything else must keep its baseline value.
    pub allowed_false: Vec<PredRef>,
}

const CONTACT_MASKS: &[&str] = &[
    "border",
    "left_border",
    "right_border",
    "top_border",
    "bottom_border",
    "bottom_border_flush",
];

fn mask_key(relation: &str) -> &str {
    relation.strip_prefix("s_").unwrap_or(relation)
}

fn overlap_seconds(a: (f64, f64), b: (f64, f64)) -> bool {
    a.0 < b.1 && b.0 < a.1
}

fn scalar_magnitude(m: &super::AtomicMotionSpec) -> Option<f64> {
    match m.magnitude {
        Some(MagnitudeSpec::Scalar(s)) => Some(s),
        _ => None,
    }
}

/// Perturbations that are guaranteed to flip exactly their target on this
/// spec, in deterministic order.
pub fn applicable_perturbations(spec: &SceneGraphSpec) -> Vec<(PerturbTarget, PerturbKind)> {
    let mut out = Vec::new();
    for m in &spec.motions {
        let emitted = m.emitted_checks();
        let has = |n: &str| emitted.iter().any(|e| *e == n);
        let same_agent_overlapping: Vec<_> = spec
            .motions
            .iter()
            .filter(|o| o.id != m.id && o.agent == m.agent)
            .filter(|o| overlap_seconds((m.start, m.end()), (o.start, o.end())))
            .collect();

        if has("direction") && matches!(m.kind, MotionKind::Translate | MotionKind::Rotate) {
            out.push((PerturbTarget::Motion(m.id.clone()), PerturbKind::FlipDirection));
        }

        if has("magnitude") {
            let clear = match m.kind {
                MotionKind::Translate | MotionKind::Rotate => {
                    let mag = scalar_magnitude(m).unwrap_or(0.0);
                    // Another overlapping same-agent motion with a nearby
                    // scalar magnitude could mask the flip.
                    mag > 4.0
                        && same_agent_overlapping.iter().all(|o| {
                            scalar_magnitude(o)
                                .map(|s| (s - mag).abs() > 0.1 * mag.max(s) + 4.0)
                                .unwrap_or(true)
                        })
                }
                MotionKind::Scale => match m.magnitude {
                    Some(MagnitudeSpec::Pair(r)) => {
                        let constrained_visible = |axis: f64| axis == 1.0 || (axis - 1.0).abs() >= 0.2;
                        constrained_visible(r[0]) && constrained_visible(r[1])
                    }
                    _ => false,
                },
            };
            if clear {
                out.push((PerturbTarget::Motion(m.id.clone()), PerturbKind::ScaleMagnitude));
            }
        }

        if has("duration") {
            let half_frames = m.duration * spec.fps / 2.0;
            let aligned = (half_frames - half_frames.round()).abs() < 1e-6 && half_frames >= 1.0;
            let tol = 3.0 * (1.0 / spec.fps).max(0.02 * m.duration);
            let clear = spec
                .motions
                .iter()
                .filter(|o| o.id != m.id && o.agent == m.agent)
                .all(|o| {
                    (o.duration - m.duration).abs() > tol
                        && (o.duration - m.duration / 2.0).abs() > tol
                });
            if aligned && clear {
                out.push((PerturbTarget::Motion(m.id.clone()), PerturbKind::HalveDuration));
            }
        }

        if has("post") && !has("magnitude") && m.kind == MotionKind::Translate {
            out.push((PerturbTarget::Motion(m.id.clone()), PerturbKind::DropPost));
        }
    }

    for (i, rel) in spec.relations.iter().enumerate() {
        let (ma, mb) = (
            spec.motion(&rel.a).expect("validated"),
            spec.motion(&rel.b).expect("validated"),
        );
        if ma.agent != mb.agent {
            out.push((PerturbTarget::Relation(i), PerturbKind::ShiftStart));
        }
        if matches!(rel.kind, RelationKind::Before | RelationKind::After)
            && (ma.start - mb.start).abs() > 1e-9
        {
            let disjoint_after_swap = if ma.agent == mb.agent {
                // Swapped spans must stay disjoint for same-agent pairs.
                let (s1, d1) = (ma.start, ma.duration);
                let (s2, d2) = (mb.start, mb.duration);
                let (first_end, second_start) = if s1 < s2 {
                    (s1 + d2, s2)
                } else {
                    (s2 + d1, s1)
                };
                first_end <= second_start + 1e-9
            } else {
                true
            };
            if disjoint_after_swap {
                out.push((PerturbTarget::Relation(i), PerturbKind::SwapOrder));
            }
        }
    }
    out
}

/// Apply one perturbation, returning the perturbed spec plus the exact
/// predicate flips the verifier must observe against the unperturbed
/// ground-truth program.
pub fn perturb(
    spec: &SceneGraphSpec,
    target: &PerturbTarget,
    kind: PerturbKind,
) -> Result<PerturbOutcome, HarnessError> {
    let compiled = compile_program(spec)?;
    let relations_involving = |motion_id: &str| -> Vec<usize> {
        spec.relations
            .iter()
            .enumerate()
            .filter(|(_, r)| r.a == motion_id || r.b == motion_id)
            .map(|(i, _)| i)
            .collect()
    };

    // Flips shared by every perturbation that empties a motion binding:
    // the statement itself plus every temporal relation over the motion.
    let binding_cone = |motion_id: &str, required: &mut Vec<PredRef>| {
        let stmt = compiled.motion_statements[motion_id];
        required.push(PredRef::stmt(stmt));
        for ri in relations_involving(motion_id) {
            let rstmt = compiled.relation_statements[ri];
            required.push(PredRef::pred(rstmt, spec.relations[ri].kind.predicate()));
            required.push(PredRef::stmt(rstmt));
        }
    };

    // Posts of *other* motions that reference the moved agent may flip when
    // its trajectory changes.
    let foreign_post_cone = |agent: &str, skip_motion: &str, allowed: &mut Vec<PredRef>| {
        for other in &spec.motions {
            if other.id == skip_motion {
                continue;
            }
            if let Some(post) = &other.post {
                if post.reference == agent || other.agent == agent {
                    let stmt = compiled.motion_statements[&other.id];
                    allowed.push(PredRef::pred(stmt, "post"));
                    allowed.push(PredRef::pred(stmt, format!("s_{}", mask_key(&post.relation))));
                    allowed.push(PredRef::stmt(stmt));
                    for ri in relations_involving(&other.id) {
                        let rstmt = compiled.relation_statements[ri];
                        allowed.push(PredRef::pred(rstmt, spec.relations[ri].kind.predicate()));
                        allowed.push(PredRef::stmt(rstmt));
                    }
                }
            }
        }
    };

    let mut out = spec.clone();
    let mut required = Vec::new();
    let mut allowed = Vec::new();
    let description;

    match (target, kind) {
        (PerturbTarget::Motion(id), PerturbKind::FlipDirection) => {
            let stmt = compiled.motion_statements.get(id).ok_or_else(|| {
                HarnessError::InvalidSelector(format!("unknown motion {id:?}"))
            })?;
            let m = out
                .motions
                .iter_mut()
                .find(|m| m.id == *id)
                .expect("statement map implies existence");
            match (&m.kind, m.direction.clone()) {
                (MotionKind::Translate, Some(DirectionSpec::Vector(v))) => {
                    m.direction = Some(DirectionSpec::Vector([-v[0], -v[1]]));
                }
                (MotionKind::Rotate, Some(DirectionSpec::Named(n))) => {
                    let flipped = if n == "clockwise" {
                        "counterclockwise"
                    } else {
                        "clockwise"
                    };
                    m.direction = Some(DirectionSpec::Named(flipped.to_string()));
                }
                _ => {
                    return Err(HarnessError::InvalidSelector(format!(
                        "flip-direction does not apply to motion {id:?}"
                    )))
                }
            }
            description = format!("flip direction of {id}");
            required.push(PredRef::pred(*stmt, "direction"));
            if spec.motion(id).unwrap().emitted_checks().contains(&"post") {
                required.push(PredRef::pred(*stmt, "post"));
                let mask = mask_key(&spec.motion(id).unwrap().post.as_ref().unwrap().relation);
                allowed.push(PredRef::pred(*stmt, format!("s_{mask}")));
            }
            binding_cone(id, &mut required);
            foreign_post_cone(&spec.motion(id).unwrap().agent, id, &mut allowed);
        }

        (PerturbTarget::Motion(id), PerturbKind::ScaleMagnitude) => {
            let stmt = compiled.motion_statements.get(id).ok_or_else(|| {
                HarnessError::InvalidSelector(format!("unknown motion {id:?}"))
            })?;
            let m = out
                .motions
                .iter_mut()
                .find(|m| m.id == *id)
                .expect("statement map implies existence");
            match m.magnitude.clone() {
                Some(MagnitudeSpec::Scalar(s)) => {
                    m.magnitude = Some(MagnitudeSpec::Scalar(s / 2.0));
                }
                Some(MagnitudeSpec::Pair(r)) => {
                    let contract = |x: f64| 1.0 + (x - 1.0) / 2.0;
                    m.magnitude = Some(MagnitudeSpec::Pair([contract(r[0]), contract(r[1])]));
                }
                None => {
                    return Err(HarnessError::InvalidSelector(format!(
                        "motion {id:?} has no magnitude to perturb"
                    )))
                }
            }
            description = format!("halve net magnitude of {id}");
            required.push(PredRef::pred(*stmt, "magnitude"));
            if spec.motion(id).unwrap().emitted_checks().contains(&"post") {
                required.push(PredRef::pred(*stmt, "post"));
                let mask = mask_key(&spec.motion(id).unwrap().post.as_ref().unwrap().relation);
                allowed.push(PredRef::pred(*stmt, format!("s_{mask}")));
            }
            binding_cone(id, &mut required);
            foreign_post_cone(&spec.motion(id).unwrap().agent, id, &mut allowed);
        }

        (PerturbTarget::Motion(id), PerturbKind::HalveDuration) => {
            let stmt = compiled.motion_statements.get(id).ok_or_else(|| {
                HarnessError::InvalidSelector(format!("unknown motion {id:?}"))
            })?;
            let m = out
                .motions
                .iter_mut()
                .find(|m| m.id == *id)
                .expect("statement map implies existence");
            m.duration /= 2.0;
            description = format!("halve duration of {id}");
            required.push(PredRef::pred(*stmt, "duration"));
            binding_cone(id, &mut required);
        }

        (PerturbTarget::Motion(id), PerturbKind::DropPost) => {
            let stmt = compiled.motion_statements.get(id).ok_or_else(|| {
                HarnessError::InvalidSelector(format!("unknown motion {id:?}"))
            })?;
            let original = spec
                .motion(id)
                .ok_or_else(|| HarnessError::InvalidSelector(format!("unknown motion {id:?}")))?;
            let post = original.post.as_ref().ok_or_else(|| {
                HarnessError::InvalidSelector(format!("motion {id:?} has no post condition"))
            })?;
            let key = mask_key(&post.relation).to_string();
            let overshoot = CONTACT_MASKS.contains(&key.as_str());
            let factor = if overshoot { 1.5 } else { 0.5 };
            let m = out
                .motions
                .iter_mut()
                .find(|m| m.id == *id)
                .expect("statement map implies existence");
            match m.magnitude.clone() {
                Some(MagnitudeSpec::Scalar(s)) => {
                    m.magnitude = Some(MagnitudeSpec::Scalar(s * factor));
                }
                _ => {
                    return Err(HarnessError::InvalidSelector(format!(
                        "drop-post requires a translation magnitude on {id:?}"
                    )))
                }
            }
            description = format!(
                "{} {id} so the post relation fails at the run end",
                if overshoot { "overshoot" } else { "undershoot" }
            );
            required.push(PredRef::pred(*stmt, "post"));
            allowed.push(PredRef::pred(*stmt, format!("s_{key}")));
            binding_cone(id, &mut required);
            foreign_post_cone(&original.agent, id, &mut allowed);
        }

        (PerturbTarget::Relation(i), PerturbKind::ShiftStart) => {
            let rel = spec
                .relations
                .get(*i)
                .ok_or_else(|| HarnessError::InvalidSelector(format!("no relation #{i}")))?;
            let rstmt = compiled.relation_statements[*i];
            let (a_start, a_end) = {
                let a = spec.motion(&rel.a).expect("validated");
                (a.start, a.end())
            };
            let b = out
                .motions
                .iter_mut()
                .find(|m| m.id == rel.b)
                .expect("validated");
            match rel.kind {
                // Make the pair simultaneous: no longer strictly ordered.
                RelationKind::Before | RelationKind::After => b.start = a_start,
                // Push the partner fully past the end: no longer overlapping.
                RelationKind::While => b.start = a_end,
            }
            description = format!("shift start of {} against {}", rel.b, rel.a);
            required.push(PredRef::pred(rstmt, rel.kind.predicate()));
            required.push(PredRef::stmt(rstmt));
            for ri in relations_involving(&rel.b) {
                if ri != *i {
                    let other = compiled.relation_statements[ri];
                    allowed.push(PredRef::pred(other, spec.relations[ri].kind.predicate()));
                    allowed.push(PredRef::stmt(other));
                }
            }
        }

        (PerturbTarget::Relation(i), PerturbKind::SwapOrder) => {
            let rel = spec
                .relations
                .get(*i)
                .ok_or_else(|| HarnessError::InvalidSelector(format!("no relation #{i}")))?;
            if !matches!(rel.kind, RelationKind::Before | RelationKind::After) {
                return Err(HarnessError::InvalidSelector(
                    "swap-order applies to before/after relations".into(),
                ));
            }
            let rstmt = compiled.relation_statements[*i];
            let sa = spec.motion(&rel.a).expect("validated").start;
            let sb = spec.motion(&rel.b).expect("validated").start;
            for m in &mut out.motions {
                if m.id == rel.a {
                    m.start = sb;
                } else if m.id == rel.b {
                    m.start = sa;
                }
            }
            description = format!("swap start times of {} and {}", rel.a, rel.b);
            required.push(PredRef::pred(rstmt, rel.kind.predicate()));
            required.push(PredRef::stmt(rstmt));
            for id in [&rel.a, &rel.b] {
                for ri in relations_involving(id) {
                    if ri != *i {
                        let other = compiled.relation_statements[ri];
                        allowed.push(PredRef::pred(other, spec.relations[ri].kind.predicate()));
                        allowed.push(PredRef::stmt(other));
                    }
                }
            }
        }

        (t, k) => {
            return Err(HarnessError::InvalidSelector(format!(
                "{} does not apply to {t:?}",
                k.name()
            )))
        }
    }

    out.validate()?;
    Ok(PerturbOutcome {
        spec: out,
        description,
        required_false: required,
        allowed_false: allowed,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{
        AtomicMotionSpec, Easing, SpecObject, TemporalConstraint,
    };
    use super::*;

    fn before_pair_spec() -> SceneGraphSpec {
        SceneGraphSpec {
            name: "pair".into(),
            fps: 60.0,
            duration: None,
            objects: vec![
                SpecObject {
                    id: "a".into(),
                    shape: "square".into(),
                    color: "black".into(),
                    bbox: [100.0, 100.0, 50.0, 50.0],
                },
                SpecObject {
                    id: "b".into(),
                    shape: "circle".into(),
                    color: "blue".into(),
                    bbox: [300.0, 100.0, 60.0, 60.0],
                },
            ],
            motions: vec![
                AtomicMotionSpec {
                    id: "m_1".into(),
                    agent: "a".into(),
                    kind: MotionKind::Translate,
                    direction: Some(DirectionSpec::Vector([1.0, 0.0])),
                    magnitude: Some(MagnitudeSpec::Scalar(100.0)),
                    origin: None,
                    duration: 1.0,
                    start: 0.0,
                    easing: Easing::Linear,
                    post: None,
                    checks: None,
                },
                AtomicMotionSpec {
                    id: "m_2".into(),
                    agent: "b".into(),
                    kind: MotionKind::Rotate,
                    direction: Some(DirectionSpec::Named("clockwise".into())),
                    magnitude: Some(MagnitudeSpec::Scalar(90.0)),
                    origin: None,
                    duration: 1.0,
                    start: 1.0,
                    easing: Easing::Linear,
                    post: None,
                    checks: None,
                },
            ],
            relations: vec![TemporalConstraint {
                kind: RelationKind::Before,
                a: "m_1".into(),
                b: "m_2".into(),
            }],
        }
    }

    #[test]
    fn applicable_set_covers_motions_and_relations() {
        let spec = before_pair_spec();
        let perturbations = applicable_perturbations(&spec);
        assert!(perturbations.contains(&(
            PerturbTarget::Motion("m_1".into()),
            PerturbKind::FlipDirection
        )));
        assert!(perturbations.contains(&(
            PerturbTarget::Relation(0),
            PerturbKind::SwapOrder
        )));
        assert!(perturbations.contains(&(
            PerturbTarget::Relation(0),
            PerturbKind::ShiftStart
        )));
    }

    #[test]
    fn flip_direction_negates_vector_and_fills_cone() {
        let spec = before_pair_spec();
        let outcome = perturb(
            &spec,
            &PerturbTarget::Motion("m_1".into()),
            PerturbKind::FlipDirection,
        )
        .unwrap();
        match &outcome.spec.motions[0].direction {
            Some(DirectionSpec::Vector(v)) => assert_eq!(*v, [-1.0, 0.0]),
            other => panic!("unexpected {other:?}"),
        }
        // direction + statement + relation + relation statement
        assert!(outcome
            .required_false
            .contains(&PredRef::pred(2, "direction")));
        assert!(outcome.required_false.contains(&PredRef::stmt(2)));
        assert!(outcome
            .required_false
            .contains(&PredRef::pred(4, "t_before")));
    }

    #[test]
    fn swap_order_swaps_start_times() {
        let spec = before_pair_spec();
        let outcome = perturb(&spec, &PerturbTarget::Relation(0), PerturbKind::SwapOrder).unwrap();
        assert_eq!(outcome.spec.motions[0].start, 1.0);
        assert_eq!(outcome.spec.motions[1].start, 0.0);
        assert_eq!(
            outcome.required_false,
            vec![PredRef::pred(4, "t_before"), PredRef::stmt(4)]
        );
    }

    #[test]
    fn invalid_selector_is_rejected() {
        let spec = before_pair_spec();
        assert!(matches!(
            perturb(
                &spec,
                &PerturbTarget::Motion("ghost".into()),
                PerturbKind::FlipDirection
            ),
            Err(HarnessError::InvalidSelector(_))
        ));
        assert!(matches!(
            perturb(&spec, &PerturbTarget::Motion("m_1".into()), PerturbKind::DropPost),
            Err(HarnessError::InvalidSelector(_))
        ));
    }
}
