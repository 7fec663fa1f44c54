//! Ground-truth program emission.
//!
//! Objects bind first (`o_1 = iota(Object, lambda o: color(..) and
//! shape(..))`, falling back to `id(..)` when color+shape is ambiguous),
//! then motions in spec order with predicates in the canonical order
//! type, direction, magnitude, origin, post, duration, agent. Motions
//! that participate in temporal constraints bind via `iota`; free motions
//! use a bare `exists`. Temporal constraints trail as bare statements.

use std::collections::BTreeMap;

use crate::lang::format_number;

use super::{
    AtomicMotionSpec, DirectionSpec, HarnessError, MagnitudeSpec, MotionKind, OriginCoord,
    SceneGraphSpec,
};

/// Program text plus the maps tests need to locate statements.
#[derive(Clone, Debug)]
pub struct CompiledProgram {
    pub text: String,
    /// object id -> variable name
    pub object_vars: BTreeMap<String, String>,
    /// motion id -> variable name
    pub motion_vars: BTreeMap<String, String>,
    /// motion id -> statement index
    pub motion_statements: BTreeMap<String, usize>,
    /// index parallel to `spec.relations`
    pub relation_statements: Vec<usize>,
    /// motion id -> emitted predicate names
    pub emitted: BTreeMap<String, Vec<&'static str>>,
}

pub fn compile_program(spec: &SceneGraphSpec) -> Result<CompiledProgram, HarnessError> {
    spec.validate()?;

    // Objects referenced by the program: agents first, then post
    // references, in motion order.
    let mut referenced: Vec<String> = Vec::new();
    for m in &spec.motions {
        if !referenced.contains(&m.agent) {
            referenced.push(m.agent.clone());
        }
    }
    for m in &spec.motions {
        if let Some(post) = &m.post {
            if !referenced.contains(&post.reference) {
                referenced.push(post.reference.clone());
            }
        }
    }

    let mut text = String::new();
    let mut object_vars = BTreeMap::new();
    for (i, id) in referenced.iter().enumerate() {
        let var = format!("o_{}", i + 1);
        let obj = spec.object(id).expect("validated");
        // color+shape when that uniquely names the object, else id.
        let ambiguous = spec
            .objects
            .iter()
            .filter(|o| o.color == obj.color && o.shape == obj.shape)
            .count()
            > 1;
        let body = if ambiguous {
            format!("id(o, \"{}\")", obj.id)
        } else {
            format!("color(o, \"{}\") and shape(o, \"{}\")", obj.color, obj.shape)
        };
        text.push_str(&format!("{var} = iota(Object, lambda o: {body})\n"));
        object_vars.insert(id.clone(), var);
    }

    let in_relation = |motion_id: &str| {
        spec.relations
            .iter()
            .any(|r| r.a == motion_id || r.b == motion_id)
    };

    let mut motion_vars = BTreeMap::new();
    let mut motion_statements = BTreeMap::new();
    let mut emitted = BTreeMap::new();
    let mut stmt_index = referenced.len();

    for (j, m) in spec.motions.iter().enumerate() {
        let var = format!("m_{}", j + 1);
        let checks = m.emitted_checks();
        let (lambda_var, header, footer) = if in_relation(&m.id) {
            (
                "m".to_string(),
                format!("{var} = iota(Motion, lambda m: "),
                ")".to_string(),
            )
        } else {
            (
                var.clone(),
                format!("exists(Motion, lambda {var}: "),
                ")".to_string(),
            )
        };
        let preds = motion_predicates(spec, m, &lambda_var, &object_vars, &checks)?;
        text.push_str(&header);
        text.push_str(&preds.join(" and "));
        text.push_str(&footer);
        text.push('\n');

        motion_vars.insert(m.id.clone(), var);
        motion_statements.insert(m.id.clone(), stmt_index);
        emitted.insert(m.id.clone(), checks);
        stmt_index += 1;
    }

    let mut relation_statements = Vec::new();
    for rel in &spec.relations {
        let va = &motion_vars[&rel.a];
        let vb = &motion_vars[&rel.b];
        text.push_str(&format!("{}({va}, {vb})\n", rel.kind.predicate()));
        relation_statements.push(stmt_index);
        stmt_index += 1;
    }

    Ok(CompiledProgram {
        text,
        object_vars,
        motion_vars,
        motion_statements,
        relation_statements,
        emitted,
    })
}

fn motion_predicates(
    spec: &SceneGraphSpec,
    m: &AtomicMotionSpec,
    var: &str,
    object_vars: &BTreeMap<String, String>,
    checks: &[&'static str],
) -> Result<Vec<String>, HarnessError> {
    let has = |name: &str| checks.iter().any(|c| *c == name);
    let mut preds = Vec::new();

    preds.push(format!("type({var}, \"{}\")", m.kind.type_value()));

    if has("direction") {
        let value = match (&m.kind, m.direction.as_ref().expect("validated")) {
            (MotionKind::Rotate, DirectionSpec::Named(n)) => format!("\"{n}\""),
            (MotionKind::Translate, DirectionSpec::Vector(v)) => fmt_vec(v),
            (MotionKind::Scale, DirectionSpec::Vector(v)) => {
                // Sign pairs only.
                let sign = |x: f64| {
                    if x > 0.0 {
                        1.0
                    } else if x < 0.0 {
                        -1.0
                    } else {
                        0.0
                    }
                };
                fmt_vec(&[sign(v[0]), sign(v[1])])
            }
            _ => unreachable!("validated"),
        };
        preds.push(format!("direction({var}, {value})"));
    }

    if has("magnitude") {
        let value = match (&m.kind, m.magnitude.as_ref().expect("validated")) {
            (MotionKind::Translate | MotionKind::Rotate, MagnitudeSpec::Scalar(s)) => {
                format_number(*s)
            }
            (MotionKind::Scale, MagnitudeSpec::Pair(r)) => {
                // Unconstrained axes (direction 0 / ratio 1) emit as 0.0.
                let dir = match m.direction.as_ref() {
                    Some(DirectionSpec::Vector(v)) => *v,
                    _ => [1.0, 1.0],
                };
                let axis = |d: f64, r: f64| if d == 0.0 || r == 1.0 { 0.0 } else { r };
                fmt_vec(&[axis(dir[0], r[0]), axis(dir[1], r[1])])
            }
            _ => unreachable!("validated"),
        };
        preds.push(format!("magnitude({var}, {value})"));
    }

    if has("origin") {
        let origin = m.origin.as_ref().expect("emitted only when present");
        let coord = |c: &OriginCoord| match c {
            OriginCoord::Px(v) => format_number(*v),
            OriginCoord::Percent(p) => format!("\"{}%\"", format_number(*p)),
        };
        preds.push(format!(
            "origin({var}, [{}, {}])",
            coord(&origin[0]),
            coord(&origin[1])
        ));
    }

    if has("post") {
        let post = m.post.as_ref().expect("emitted only when present");
        let mask_key = post.relation.strip_prefix("s_").unwrap_or(&post.relation);
        let agent_var = &object_vars[&m.agent];
        let ref_var = object_vars.get(&post.reference).ok_or_else(|| {
            HarnessError::InvalidSpec(format!(
                "post reference {:?} not bound to a variable",
                post.reference
            ))
        })?;
        preds.push(format!("post({var}, s_{mask_key}({agent_var}, {ref_var}))"));
    }

    if has("duration") {
        preds.push(format!("duration({var}, {})", format_number(m.duration)));
    }

    let agent_var = &object_vars[&m.agent];
    preds.push(format!("agent({var}, {agent_var})"));

    let _ = spec;
    Ok(preds)
}

fn fmt_vec(v: &[f64; 2]) -> String {
    format!("[{}, {}]", format_number(v[0]), format_number(v[1]))
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    fn translate_spec() -> SceneGraphSpec {
        SceneGraphSpec {
            name: "t".into(),
            fps: 60.0,
            duration: None,
            objects: vec![SpecObject {
                id: "sq".into(),
                shape: "square".into(),
                color: "black".into(),
                bbox: [100.0, 400.0, 80.0, 80.0],
            }],
            motions: vec![AtomicMotionSpec {
                id: "up".into(),
                agent: "sq".into(),
                kind: MotionKind::Translate,
                direction: Some(DirectionSpec::Vector([0.0, 1.0])),
                magnitude: Some(MagnitudeSpec::Scalar(100.0)),
                origin: None,
                duration: 1.0,
                start: 0.0,
                easing: Easing::Linear,
                post: None,
                checks: Some(vec![
                    "direction".into(),
                    "magnitude".into(),
                ]),
            }],
            relations: vec![],
        }
    }

    #[test]
    fn translate_program_matches_canonical_shape() {
        let compiled = compile_program(&translate_spec()).unwrap();
        let expected = "o_1 = iota(Object, lambda o: color(o, \"black\") and shape(o, \"square\"))\n\
             exists(Motion, lambda m_1: type(m_1, \"translate\") and direction(m_1, [0.0, 1.0]) and magnitude(m_1, 100.0) and agent(m_1, o_1))\n";
        assert_eq!(compiled.text, expected);
    }

    #[test]
    fn scale_magnitude_pads_unconstrained_axis_with_zero() {
        let mut spec = translate_spec();
        spec.motions[0].kind = MotionKind::Scale;
        spec.motions[0].direction = Some(DirectionSpec::Vector([1.0, 0.0]));
        spec.motions[0].magnitude = Some(MagnitudeSpec::Pair([2.5, 1.0]));
        spec.motions[0].origin = Some([OriginCoord::Percent(50.0), OriginCoord::Percent(50.0)]);
        spec.motions[0].checks = Some(vec![
            "direction".into(),
            "magnitude".into(),
            "origin".into(),
        ]);
        let compiled = compile_program(&spec).unwrap();
        assert!(compiled.text.contains("magnitude(m_1, [2.5, 0.0])"));
        assert!(compiled.text.contains("origin(m_1, [\"50%\", \"50%\"])"));
    }

    #[test]
    fn relations_bind_motions_with_iota_and_trail() {
        let mut spec = translate_spec();
        let mut m2 = spec.motions[0].clone();
        m2.id = "second".into();
        m2.start = 1.0;
        spec.motions.push(m2);
        spec.relations = vec![TemporalConstraint {
            kind: RelationKind::Before,
            a: "up".into(),
            b: "second".into(),
        }];
        let compiled = compile_program(&spec).unwrap();
        assert!(compiled.text.contains("m_1 = iota(Motion, lambda m:"));
        assert!(compiled.text.contains("m_2 = iota(Motion, lambda m:"));
        assert!(compiled.text.trim_end().ends_with("t_before(m_1, m_2)"));
        assert_eq!(compiled.relation_statements, vec![3]);
        assert_eq!(compiled.motion_statements["up"], 1);
    }

    #[test]
    fn ambiguous_color_shape_falls_back_to_id() {
        let mut spec = translate_spec();
        let mut second = spec.objects[0].clone();
        second.id = "sq2".into();
        spec.objects.push(second);
        let compiled = compile_program(&spec).unwrap();
        assert!(compiled.text.contains("id(o, \"sq\")"));
    }

    #[test]
    fn compiled_programs_parse_and_resolve() {
        let compiled = compile_program(&translate_spec()).unwrap();
        let parsed = crate::lang::parse(&compiled.text).unwrap();
        let resolved = crate::lang::resolve(&parsed).unwrap();
        assert!(resolved.warnings.is_empty());
    }
}
