//! Predicate dispatch and semantics.
//!
//! Object predicates broadcast over whole rows; motion predicates read the
//! animation matrix per cell; temporal and spatial predicates delegate to
//! the algebra masks. Handlers never abort on semantic emptiness: a failed
//! binding or empty run list evaluates to an all-false tensor with an
//! explanatory note on the trace entry.

use std::collections::BTreeMap;

use crate::algebra::{eval_mask_temporal, rect_relation, AllenRelation, FrameInterval, TemporalMask};
use crate::color::parse_color;
use crate::eval::tensor::runs_of;
use crate::lang::{format_arg, Arg, ArgScalar, Expr};
use crate::motion::{Channel, MotionSegment};

use super::{
    display_args, BindingValue, EvalError, Evaluator, LambdaCtx, MotionBinding, Note, NoteCode,
    TensorKind, TensorValue, Tracer,
};

/// A call argument after environment resolution.
enum RArg {
    /// The enclosing lambda variable (still ranging over all rows).
    Lambda,
    Object(usize),
    ObjectSet(Vec<usize>),
    Motion(MotionBinding),
    Num(f64),
    Str(String),
    List(Vec<ArgScalar>),
    /// An evaluated nested spatial predicate.
    Spatial(TensorValue),
    /// A reference to a binding that failed to resolve.
    Failed { display: String, note: Note },
}

pub(crate) fn eval_call(
    ev: &mut Evaluator,
    name: &str,
    args: &[Arg],
    ctx: &mut Option<LambdaCtx>,
    tracer: &mut Tracer,
) -> Result<TensorValue, EvalError> {
    let args_display = display_args(args);
    let mut resolved = Vec::with_capacity(args.len());
    for arg in args {
        resolved.push(resolve_arg(ev, arg, ctx, tracer)?);
    }

    // A failed sub-term poisons the predicate, not the run.
    if let Some((index, display, original)) = resolved.iter().enumerate().find_map(|(i, a)| {
        match a {
            RArg::Failed { display, note } => Some((i, display.clone(), note.clone())),
            _ => None,
        }
    }) {
        let failed_sort = crate::lang::signature(name).and_then(|sig| sig.term_sort(index));
        let note = match (original.code, failed_sort) {
            (NoteCode::IotaEmpty, Some(crate::lang::TermSort::Motion)) => Note::new(
                NoteCode::NoValidRuns,
                format!("operand {display} has no valid runs"),
            ),
            (NoteCode::IotaEmpty, _) => Note::new(
                NoteCode::UnresolvedObject,
                format!("object {display} did not resolve"),
            ),
            _ => original,
        };
        let tensor = TensorValue::cells(ev.rows, ev.cols, false);
        tracer.record_tensor(name, args_display, tensor.clone(), Some(note), BTreeMap::new());
        return Ok(tensor);
    }

    let out = match name {
        "shape" | "color" | "id" => object_attr(ev, name, &resolved)?,
        "type" => type_pred(ev, &resolved)?,
        "direction" => direction_pred(ev, &resolved)?,
        "magnitude" => magnitude_pred(ev, &resolved)?,
        "origin" => origin_pred(ev, &resolved)?,
        "duration" => duration_pred(ev, &resolved)?,
        "agent" => agent_pred(ev, &resolved, tracer)?,
        "post" => post_pred(ev, &resolved, ctx)?,
        "t_before" | "t_while" | "t_after" => {
            let mask = ev
                .masks
                .temporal(&name["t_".len()..])
                .cloned()
                .ok_or_else(|| EvalError::Internal(format!("temporal mask {name} missing")))?;
            temporal_pred(ev, &mask, &resolved, args, ctx)?
        }
        "t_rel" => {
            let rel = expect_relation(name, &resolved[2])?;
            let mask: TemporalMask = [rel].into_iter().collect();
            temporal_pred(ev, &mask, &resolved, args, ctx)?
        }
        _ if AllenRelation::from_name(name).is_some() => {
            let mask: TemporalMask = [AllenRelation::from_name(name).unwrap()].into_iter().collect();
            temporal_pred(ev, &mask, &resolved, args, ctx)?
        }
        "s_rel" => {
            let rx = expect_relation(name, &resolved[2])?;
            let ry = expect_relation(name, &resolved[3])?;
            spatial_rel_pred(ev, &resolved, rx, ry)?
        }
        _ if name.starts_with("s_") => spatial_pred(ev, name, &resolved)?,
        other => {
            return Err(EvalError::Internal(format!(
                "predicate {other} survived resolution without a handler"
            )))
        }
    };

    let (tensor, note, row_notes, witness) = out;
    if let Some(ranges) = witness {
        tracer.record_fixed(name, args_display, tensor.any(), ranges, note);
    } else {
        tracer.record_tensor(name, args_display, tensor.clone(), note, row_notes);
    }
    Ok(tensor)
}

/// Tensor result, optional note, per-row notes, and (for scalar relational
/// predicates) witness ranges recorded as fixed evidence.
type HandlerOut = (
    TensorValue,
    Option<Note>,
    BTreeMap<usize, Note>,
    Option<Vec<FrameInterval>>,
);

fn resolve_arg(
    ev: &mut Evaluator,
    arg: &Arg,
    ctx: &mut Option<LambdaCtx>,
    tracer: &mut Tracer,
) -> Result<RArg, EvalError> {
    Ok(match arg {
        Arg::Num(n) => RArg::Num(*n),
        Arg::Str(s) => RArg::Str(s.clone()),
        Arg::List(items) => RArg::List(items.clone()),
        Arg::Var(v) => {
            if let Some(c) = ctx.as_ref() {
                if c.var == *v {
                    return Ok(RArg::Lambda);
                }
            }
            match ev.lookup_env(v) {
                Some(Ok(BindingValue::Object(i))) => RArg::Object(*i),
                Some(Ok(BindingValue::ObjectSet(s))) => RArg::ObjectSet(s.clone()),
                Some(Ok(BindingValue::Motion(m))) => RArg::Motion(m.clone()),
                Some(Ok(BindingValue::MotionSet(_))) | Some(Ok(BindingValue::Bool(_))) => {
                    return Err(EvalError::Internal(format!(
                        "binding {v:?} has a sort the checker should have rejected"
                    )))
                }
                Some(Err(note)) => RArg::Failed {
                    display: v.clone(),
                    note: note.clone(),
                },
                None => {
                    return Err(EvalError::Internal(format!(
                        "unbound variable {v:?} survived resolution"
                    )))
                }
            }
        }
        Arg::Expr(Expr::Quantifier {
            kind,
            sort,
            var,
            body,
        }) => {
            let outcome = ev.eval_nested_quantifier(*kind, *sort, var, body, tracer)?;
            match outcome {
                Ok(BindingValue::Object(i)) => RArg::Object(i),
                Ok(BindingValue::ObjectSet(s)) => RArg::ObjectSet(s),
                Ok(BindingValue::Motion(m)) => RArg::Motion(m),
                Ok(BindingValue::MotionSet(_)) | Ok(BindingValue::Bool(_)) => {
                    return Err(EvalError::Internal(
                        "nested quantifier produced a non-term value".into(),
                    ))
                }
                Err(note) => RArg::Failed {
                    display: format_arg(arg),
                    note,
                },
            }
        }
        Arg::Expr(Expr::Call { name, args }) => {
            let tensor = eval_call(ev, name, args, ctx, tracer)?;
            RArg::Spatial(tensor)
        }
        Arg::Expr(_) => {
            return Err(EvalError::Internal(
                "unsupported expression argument survived resolution".into(),
            ))
        }
    })
}

fn expect_relation(pred: &str, arg: &RArg) -> Result<AllenRelation, EvalError> {
    match arg {
        RArg::Str(s) => AllenRelation::from_name(s).ok_or_else(|| EvalError::BadArgumentShape {
            predicate: pred.to_string(),
            detail: format!("{s:?} is not an interval relation"),
        }),
        _ => Err(EvalError::BadArgumentShape {
            predicate: pred.to_string(),
            detail: "relation name must be a string".into(),
        }),
    }
}

/// Candidate object rows for an object-sorted argument.
fn object_rows(ev: &Evaluator, arg: &RArg) -> Vec<usize> {
    match arg {
        RArg::Lambda => (0..ev.rows).collect(),
        RArg::Object(i) => vec![*i],
        RArg::ObjectSet(s) => s.clone(),
        _ => Vec::new(),
    }
}

fn object_attr(ev: &Evaluator, name: &str, args: &[RArg]) -> Result<HandlerOut, EvalError> {
    let value = match &args[1] {
        RArg::Str(s) => s.clone(),
        _ => {
            return Err(EvalError::BadArgumentShape {
                predicate: name.to_string(),
                detail: "attribute value must be a string".into(),
            })
        }
    };
    let target_color = if name == "color" {
        Some(parse_color(&value).map_err(|_| EvalError::UnknownColorName(value.clone()))?)
    } else {
        None
    };

    let mut tensor = TensorValue::cells(ev.rows, ev.cols, false);
    for row in object_rows(ev, &args[0]) {
        let obj = &ev.scene.objects[row];
        let matched = match name {
            "shape" => obj.shape.name() == value,
            "color" => obj.color.matches(&target_color.unwrap(), ev.cfg.color_tol),
            "id" => obj.id == value,
            _ => unreachable!(),
        };
        if matched {
            for c in 0..ev.cols {
                tensor.set_cell(row, c, true);
            }
        }
    }
    Ok((tensor, None, BTreeMap::new(), None))
}

/// Candidate motion rows plus an optional per-frame restriction mask.
fn motion_rows(ev: &Evaluator, arg: &RArg) -> Vec<(usize, Option<Vec<bool>>)> {
    match arg {
        RArg::Lambda => (0..ev.rows).map(|r| (r, None)).collect(),
        RArg::Motion(m) => vec![(m.row, Some(m.bits.clone()))],
        _ => Vec::new(),
    }
}

fn channel_from_value(value: &str) -> Option<Channel> {
    Some(match value {
        "translate" => Channel::Translate,
        "rotate" => Channel::Rotate,
        "scale" => Channel::Scale,
        _ => return None,
    })
}

fn type_pred(ev: &Evaluator, args: &[RArg]) -> Result<HandlerOut, EvalError> {
    let value = match &args[1] {
        RArg::Str(s) => s.clone(),
        _ => {
            return Err(EvalError::BadArgumentShape {
                predicate: "type".into(),
                detail: "type value must be a string".into(),
            })
        }
    };
    let channel = channel_from_value(&value).ok_or_else(|| EvalError::BadArgumentShape {
        predicate: "type".into(),
        detail: format!("unknown motion type {value:?}"),
    })?;

    let mut tensor = TensorValue::cells(ev.rows, ev.cols, false);
    for (row, mask) in motion_rows(ev, &args[0]) {
        let oc = &ev.channels.objects[row];
        for f in 1..=ev.cols {
            let restricted = mask.as_ref().map(|m| m[f - 1]).unwrap_or(true);
            if restricted && oc.active(channel, f) {
                tensor.set_cell(row, f - 1, true);
            }
        }
    }
    Ok((tensor, None, BTreeMap::new(), None))
}

fn direction_pred(ev: &Evaluator, args: &[RArg]) -> Result<HandlerOut, EvalError> {
    enum Target {
        Rotation(bool), // clockwise?
        Vector(f64, f64),
    }
    let target = match &args[1] {
        RArg::Str(s) => match s.as_str() {
            "clockwise" => Target::Rotation(true),
            "counterclockwise" => Target::Rotation(false),
            other => {
                return Err(EvalError::BadArgumentShape {
                    predicate: "direction".into(),
                    detail: format!("unknown rotation direction {other:?}"),
                })
            }
        },
        RArg::List(items) if items.len() == 2 => {
            let x = items[0].as_number().ok_or_else(|| bad_dir())?;
            let y = items[1].as_number().ok_or_else(|| bad_dir())?;
            Target::Vector(x, y)
        }
        _ => return Err(bad_dir()),
    };
    fn bad_dir() -> EvalError {
        EvalError::BadArgumentShape {
            predicate: "direction".into(),
            detail: "expected \"clockwise\"/\"counterclockwise\" or a 2-vector".into(),
        }
    }

    let dir_tol_rad = ev.cfg.dir_tol.to_radians();
    let mut tensor = TensorValue::cells(ev.rows, ev.cols, false);
    for (row, mask) in motion_rows(ev, &args[0]) {
        let oc = &ev.channels.objects[row];
        for f in 1..=ev.cols {
            if !mask.as_ref().map(|m| m[f - 1]).unwrap_or(true) {
                continue;
            }
            let a = oc.attrs(f);
            let hit = match &target {
                Target::Rotation(clockwise) => {
                    // Positive screen angles turn clockwise (y-down).
                    oc.r_active[f - 1]
                        && if *clockwise {
                            a.d_rotate > 0.0
                        } else {
                            a.d_rotate < 0.0
                        }
                }
                Target::Vector(tx, ty) => {
                    // Translation reading: per-frame center delta converted
                    // to y-up logical coordinates.
                    let translate_hit = {
                        let norm_t = tx.hypot(*ty);
                        let (dx, dy) = a.d_translate;
                        let logical = (dx, -dy);
                        let norm_d = logical.0.hypot(logical.1);
                        oc.t_active[f - 1] && norm_t > 0.0 && {
                            let cos = (logical.0 * tx + logical.1 * ty) / (norm_d * norm_t);
                            cos.clamp(-1.0, 1.0).acos() <= dir_tol_rad
                        }
                    };
                    // Scale reading: per-axis growth sign, zero entries
                    // unconstrained.
                    let scale_hit = oc.s_active[f - 1] && {
                        let axis = |target: f64, ratio: f64| {
                            if target > 0.0 {
                                ratio - 1.0 > ev.cfg.s_eps
                            } else if target < 0.0 {
                                ratio - 1.0 < -ev.cfg.s_eps
                            } else {
                                true
                            }
                        };
                        axis(*tx, a.d_scale.0) && axis(*ty, a.d_scale.1)
                    };
                    translate_hit || scale_hit
                }
            };
            if hit {
                tensor.set_cell(row, f - 1, true);
            }
        }
    }
    Ok((tensor, None, BTreeMap::new(), None))
}

/// Net change of a channel over an arbitrary frame run (used when the
/// motion variable is already bound to runs).
fn run_net(ev: &Evaluator, row: usize, start: usize, end: usize, channel: Channel) -> (f64, f64) {
    let oc = &ev.channels.objects[row];
    let before = oc.attrs(start.saturating_sub(1).max(1));
    let last = oc.attrs(end);
    match channel {
        Channel::Translate => (
            last.center_world.0 - before.center_world.0,
            last.center_world.1 - before.center_world.1,
        ),
        Channel::Rotate => (last.angle - before.angle, 0.0),
        Channel::Scale => (last.scale.0 / before.scale.0, last.scale.1 / before.scale.1),
    }
}

fn magnitude_pred(ev: &Evaluator, args: &[RArg]) -> Result<HandlerOut, EvalError> {
    enum Target {
        Scalar(f64),
        Ratios(f64, f64),
    }
    let target = match &args[1] {
        RArg::Num(n) => Target::Scalar(*n),
        RArg::List(items) if items.len() == 2 => {
            let x = items[0].as_number().ok_or_else(|| bad_mag())?;
            let y = items[1].as_number().ok_or_else(|| bad_mag())?;
            Target::Ratios(x, y)
        }
        _ => return Err(bad_mag()),
    };
    fn bad_mag() -> EvalError {
        EvalError::BadArgumentShape {
            predicate: "magnitude".into(),
            detail: "expected a number or a 2-element ratio list".into(),
        }
    }

    let scalar_matches = |seg: &MotionSegment| match (&target, &seg.net) {
        (Target::Scalar(t), crate::motion::SegmentNet::Translate { dx, dy }) => {
            (dx.hypot(*dy) - t.abs()).abs() <= ev.cfg.mag_tol_px(*t)
        }
        (Target::Scalar(t), crate::motion::SegmentNet::Rotate { degrees }) => {
            (degrees.abs() - t.abs()).abs() <= ev.cfg.mag_tol_deg(*t)
        }
        (Target::Ratios(tx, ty), crate::motion::SegmentNet::Scale { rx, ry, flip_x, flip_y }) => {
            // Zero entries leave the axis unconstrained.
            let axis = |t: f64, r: f64, flip: bool| {
                t == 0.0 || (!flip && (r - t).abs() <= ev.cfg.mag_tol_ratio(t))
            };
            axis(*tx, *rx, *flip_x) && axis(*ty, *ry, *flip_y)
        }
        _ => false,
    };

    let mut tensor = TensorValue::cells(ev.rows, ev.cols, false);
    match &args[0] {
        RArg::Lambda => {
            for row in 0..ev.rows {
                for seg in ev.channels.objects[row].segments.all() {
                    if scalar_matches(seg) {
                        for f in seg.start_frame..=seg.end_frame {
                            tensor.set_cell(row, f - 1, true);
                        }
                    }
                }
            }
        }
        RArg::Motion(m) => {
            for run in &m.runs {
                let hit = match &target {
                    Target::Scalar(t) => {
                        let (dx, dy) =
                            run_net(ev, m.row, run.start, run.end, Channel::Translate);
                        let (deg, _) = run_net(ev, m.row, run.start, run.end, Channel::Rotate);
                        (dx.hypot(dy) - t.abs()).abs() <= ev.cfg.mag_tol_px(*t)
                            || (deg.abs() - t.abs()).abs() <= ev.cfg.mag_tol_deg(*t)
                    }
                    Target::Ratios(tx, ty) => {
                        let (rx, ry) = run_net(ev, m.row, run.start, run.end, Channel::Scale);
                        let axis = |t: f64, r: f64| {
                            t == 0.0 || (r > 0.0 && (r - t).abs() <= ev.cfg.mag_tol_ratio(t))
                        };
                        axis(*tx, rx) && axis(*ty, ry)
                    }
                };
                if hit {
                    for f in run.start..=run.end {
                        tensor.set_cell(m.row, f - 1, true);
                    }
                }
            }
        }
        _ => {}
    }
    Ok((tensor, None, BTreeMap::new(), None))
}

fn origin_pred(ev: &Evaluator, args: &[RArg]) -> Result<HandlerOut, EvalError> {
    let items = match &args[1] {
        RArg::List(items) if items.len() == 2 => items.clone(),
        _ => {
            return Err(EvalError::BadArgumentShape {
                predicate: "origin".into(),
                detail: "expected a 2-element point".into(),
            })
        }
    };

    let mut tensor = TensorValue::cells(ev.rows, ev.cols, false);
    let mut row_notes = BTreeMap::new();
    for (row, mask) in motion_rows(ev, &args[0]) {
        let oc = &ev.channels.objects[row];
        for f in 1..=ev.cols {
            if !mask.as_ref().map(|m| m[f - 1]).unwrap_or(true) {
                continue;
            }
            let a = oc.attrs(f);
            let Some(constraint) = a.origin else { continue };
            // Percent components resolve against the current world bbox.
            let resolve = |item: &ArgScalar, min: f64, extent: f64| -> Option<f64> {
                if let Some(p) = item.as_percent() {
                    Some(min + extent * p / 100.0)
                } else {
                    item.as_number()
                }
            };
            let bb = &a.bbox_world;
            let (Some(tx), Some(ty)) = (
                resolve(&items[0], bb.xmin, bb.width()),
                resolve(&items[1], bb.ymin, bb.height()),
            ) else {
                continue;
            };
            if constraint.distance((tx, ty)) <= ev.cfg.origin_tol {
                tensor.set_cell(row, f - 1, true);
            }
        }
        let unstable = oc
            .segments
            .rotate
            .iter()
            .chain(oc.segments.scale.iter())
            .any(|s| s.origin_unstable);
        if unstable {
            row_notes.insert(
                row,
                Note::new(
                    NoteCode::OriginUnstable,
                    format!(
                        "fixed point of {:?} drifts more than {} px within a run",
                        ev.scene.objects[row].id, ev.cfg.origin_spread
                    ),
                ),
            );
        }
    }
    Ok((tensor, None, row_notes, None))
}

fn duration_pred(ev: &Evaluator, args: &[RArg]) -> Result<HandlerOut, EvalError> {
    let target = match &args[1] {
        RArg::Num(n) => *n,
        _ => {
            return Err(EvalError::BadArgumentShape {
                predicate: "duration".into(),
                detail: "expected a duration in seconds".into(),
            })
        }
    };
    let fps = ev.channels.fps;
    let tol = ev.cfg.dur_tol(target, fps) + 1e-9;

    let mut tensor = TensorValue::cells(ev.rows, ev.cols, false);
    match &args[0] {
        RArg::Lambda => {
            for row in 0..ev.rows {
                for seg in ev.channels.objects[row].segments.all() {
                    if (seg.duration_seconds(fps) - target).abs() <= tol {
                        for f in seg.start_frame..=seg.end_frame {
                            tensor.set_cell(row, f - 1, true);
                        }
                    }
                }
            }
        }
        RArg::Motion(m) => {
            for run in &m.runs {
                let secs = run.len() as f64 / fps;
                if (secs - target).abs() <= tol {
                    for f in run.start..=run.end {
                        tensor.set_cell(m.row, f - 1, true);
                    }
                }
            }
        }
        _ => {}
    }
    Ok((tensor, None, BTreeMap::new(), None))
}

fn agent_pred(ev: &Evaluator, args: &[RArg], tracer: &mut Tracer) -> Result<HandlerOut, EvalError> {
    let obj_rows = object_rows(ev, &args[1]);
    if let Some(&first) = obj_rows.first() {
        if !matches!(args[1], RArg::Lambda) {
            tracer.set_agent_hint(first);
        }
    }

    let mut tensor = TensorValue::cells(ev.rows, ev.cols, false);
    match &args[0] {
        RArg::Lambda => {
            for &row in &obj_rows {
                let oc = &ev.channels.objects[row];
                for f in 1..=ev.cols {
                    if oc.any_active(f) {
                        tensor.set_cell(row, f - 1, true);
                    }
                }
            }
        }
        RArg::Motion(m) => {
            if obj_rows.contains(&m.row) {
                let oc = &ev.channels.objects[m.row];
                for f in 1..=ev.cols {
                    if m.bits[f - 1] && oc.any_active(f) {
                        tensor.set_cell(m.row, f - 1, true);
                    }
                }
            }
        }
        _ => {}
    }
    Ok((tensor, None, BTreeMap::new(), None))
}

/// Runs available to an unresolved motion variable on `row`: the
/// accumulated left-conjunct tensor intersected with channel activity.
fn implicit_runs(ev: &Evaluator, ctx: &Option<LambdaCtx>, row: usize) -> Vec<FrameInterval> {
    let oc = &ev.channels.objects[row];
    let bits: Vec<bool> = (1..=ev.cols)
        .map(|f| {
            let acc = ctx.as_ref().map(|c| c.accum.get(row, f - 1)).unwrap_or(true);
            acc && oc.any_active(f)
        })
        .collect();
    runs_of(&bits)
}

fn post_pred(
    ev: &Evaluator,
    args: &[RArg],
    ctx: &Option<LambdaCtx>,
) -> Result<HandlerOut, EvalError> {
    let spatial = match &args[1] {
        RArg::Spatial(t) => t.clone(),
        _ => {
            return Err(EvalError::BadArgumentShape {
                predicate: "post".into(),
                detail: "second argument must be a spatial predicate".into(),
            })
        }
    };
    if spatial.kind() != TensorKind::Frame {
        // The nested spatial call could not produce a per-frame vector
        // (e.g. it was poisoned by a failed object binding).
        let tensor = TensorValue::cells(ev.rows, ev.cols, false);
        let note = Note::new(
            NoteCode::NotEvaluable,
            "spatial condition did not produce a per-frame vector".to_string(),
        );
        return Ok((tensor, Some(note), BTreeMap::new(), None));
    }

    let spatial_last_true = (1..=ev.cols).rev().find(|&f| spatial.get(0, f - 1));

    let mut tensor = TensorValue::cells(ev.rows, ev.cols, false);
    let mut row_notes = BTreeMap::new();

    let mut gate_rows: Vec<(usize, Vec<FrameInterval>)> = Vec::new();
    match &args[0] {
        RArg::Lambda => {
            for row in 0..ev.rows {
                gate_rows.push((row, implicit_runs(ev, ctx, row)));
            }
        }
        RArg::Motion(m) => gate_rows.push((m.row, m.runs.clone())),
        _ => {}
    }

    for (row, runs) in gate_rows {
        let mut all_hit = !runs.is_empty();
        for run in &runs {
            if spatial.get(0, run.end - 1) {
                for f in run.start..=run.end {
                    tensor.set_cell(row, f - 1, true);
                }
            } else {
                all_hit = false;
            }
        }
        if !all_hit {
            if let Some(last_run) = runs.last() {
                let text = match spatial_last_true {
                    Some(f) if f < last_run.end => format!(
                        "run [{}, {}] ends at frame {} but the condition last holds at frame {}",
                        last_run.start, last_run.end, last_run.end, f
                    ),
                    Some(f) => format!(
                        "run [{}, {}] ends at frame {}; the condition holds at frame {} but not there",
                        last_run.start, last_run.end, last_run.end, f
                    ),
                    None => format!(
                        "run [{}, {}] ends at frame {} and the condition never holds",
                        last_run.start, last_run.end, last_run.end
                    ),
                };
                row_notes.insert(row, Note::new(NoteCode::PostEndMissed, text));
            }
        }
    }
    Ok((tensor, None, row_notes, None))
}

fn temporal_pred(
    ev: &Evaluator,
    mask: &TemporalMask,
    args: &[RArg],
    raw_args: &[Arg],
    ctx: &Option<LambdaCtx>,
) -> Result<HandlerOut, EvalError> {
    let operand_display = |i: usize| format_arg(&raw_args[i]);

    // Fully resolved operands give a scalar verdict with a witness.
    if let (RArg::Motion(a), RArg::Motion(b)) = (&args[0], &args[1]) {
        let empty = if a.runs.is_empty() {
            Some(operand_display(0))
        } else if b.runs.is_empty() {
            Some(operand_display(1))
        } else {
            None
        };
        if let Some(which) = empty {
            let tensor = TensorValue::scalar(ev.rows, ev.cols, false);
            let note = Note::new(
                NoteCode::NoValidRuns,
                format!("operand {which} has no valid runs"),
            );
            return Ok((tensor, Some(note), BTreeMap::new(), Some(Vec::new())));
        }
        let witness = eval_mask_temporal(mask, &a.runs, &b.runs);
        let tensor = TensorValue::scalar(ev.rows, ev.cols, witness.is_some());
        let ranges = witness.map(|(wa, wb)| vec![wa, wb]).unwrap_or_default();
        return Ok((tensor, None, BTreeMap::new(), Some(ranges)));
    }

    // One unresolved side: evaluate the relation per candidate row using
    // the accumulated conjunction for run derivation.
    let mut tensor = TensorValue::cells(ev.rows, ev.cols, false);
    let resolved_runs = |arg: &RArg| -> Option<Vec<FrameInterval>> {
        match arg {
            RArg::Motion(m) => Some(m.runs.clone()),
            _ => None,
        }
    };
    for row in 0..ev.rows {
        let runs_row = implicit_runs(ev, ctx, row);
        let (runs_a, runs_b) = match (&args[0], &args[1]) {
            (RArg::Lambda, other) => (runs_row.clone(), resolved_runs(other).unwrap_or_default()),
            (other, RArg::Lambda) => (resolved_runs(other).unwrap_or_default(), runs_row.clone()),
            _ => (Vec::new(), Vec::new()),
        };
        if !runs_a.is_empty()
            && !runs_b.is_empty()
            && eval_mask_temporal(mask, &runs_a, &runs_b).is_some()
        {
            for run in &runs_row {
                for f in run.start..=run.end {
                    tensor.set_cell(row, f - 1, true);
                }
            }
        }
    }
    Ok((tensor, None, BTreeMap::new(), None))
}

fn spatial_pred(ev: &Evaluator, name: &str, args: &[RArg]) -> Result<HandlerOut, EvalError> {
    let mask = ev
        .masks
        .spatial(&name["s_".len()..])
        .ok_or_else(|| EvalError::Internal(format!("spatial mask {name} missing")))?;

    match (&args[0], &args[1]) {
        (RArg::Object(a), RArg::Object(b)) => {
            let (a, b) = (*a, *b);
            let tensor = TensorValue::frame_vector(ev.rows, ev.cols, |c| {
                mask.holds(
                    ev.channels.bbox_world(a, c + 1),
                    ev.channels.bbox_world(b, c + 1),
                    ev.cfg.tau_space,
                )
            });
            Ok((tensor, None, BTreeMap::new(), None))
        }
        (RArg::Lambda, RArg::Object(b)) => {
            let b = *b;
            let tensor = TensorValue::from_fn(ev.rows, ev.cols, |r, c| {
                mask.holds(
                    ev.channels.bbox_world(r, c + 1),
                    ev.channels.bbox_world(b, c + 1),
                    ev.cfg.tau_space,
                )
            });
            Ok((tensor, None, BTreeMap::new(), None))
        }
        (RArg::Object(a), RArg::Lambda) => {
            let a = *a;
            let tensor = TensorValue::from_fn(ev.rows, ev.cols, |r, c| {
                mask.holds(
                    ev.channels.bbox_world(a, c + 1),
                    ev.channels.bbox_world(r, c + 1),
                    ev.cfg.tau_space,
                )
            });
            Ok((tensor, None, BTreeMap::new(), None))
        }
        _ => {
            let tensor = TensorValue::cells(ev.rows, ev.cols, false);
            let note = Note::new(
                NoteCode::NotEvaluable,
                format!("{name} requires resolved object terms"),
            );
            Ok((tensor, Some(note), BTreeMap::new(), None))
        }
    }
}

fn spatial_rel_pred(
    ev: &Evaluator,
    args: &[RArg],
    rx: AllenRelation,
    ry: AllenRelation,
) -> Result<HandlerOut, EvalError> {
    match (&args[0], &args[1]) {
        (RArg::Object(a), RArg::Object(b)) => {
            let (a, b) = (*a, *b);
            let tensor = TensorValue::frame_vector(ev.rows, ev.cols, |c| {
                let r = rect_relation(
                    ev.channels.bbox_world(a, c + 1),
                    ev.channels.bbox_world(b, c + 1),
                    ev.cfg.tau_space,
                );
                r.x == rx && r.y == ry
            });
            Ok((tensor, None, BTreeMap::new(), None))
        }
        _ => {
            let tensor = TensorValue::cells(ev.rows, ev.cols, false);
            let note = Note::new(
                NoteCode::NotEvaluable,
                "s_rel requires resolved object terms".to_string(),
            );
            Ok((tensor, Some(note), BTreeMap::new(), None))
        }
    }
}
