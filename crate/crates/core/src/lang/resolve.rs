//! Alias resolution, arity and sort checking.
//!
//! The language exposes two surface name sets: short names (`shp`, `dir`,
//! `before`, `top`, ...) and long/prefixed names (`shape`, `direction`,
//! `t_before`, `s_top`, ...). Both are first-class; resolution rewrites
//! every call to the canonical (long) name and canonicalizes motion-type
//! value aliases (`trn`/`rot`/`scl`). Resolution is idempotent.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::AllenRelation;
use crate::color::parse_color;
use crate::scene::ShapeClass;

use super::ast::{Arg, ArgScalar, Expr, Program, QuantKind, SortName, Statement};

#[derive(Debug, Error)]
pub enum LangError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: u32, col: u32, message: String },
    #[error("unknown predicate {name:?}{}", suggestion.as_ref().map(|s| format!(" (did you mean {s:?}?)")).unwrap_or_default())]
    UnknownPredicate {
        name: String,
        suggestion: Option<String>,
    },
    #[error("{name} takes {expected} argument(s), found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("sort error: {0}")]
    Sort(String),
    #[error("unbound variable {0:?}")]
    UnboundVariable(String),
}

/// Sort of a term parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermSort {
    Object,
    Motion,
}

impl TermSort {
    fn name(&self) -> &'static str {
        match self {
            TermSort::Object => "object",
            TermSort::Motion => "motion",
        }
    }
}

/// Accepted shapes for a value parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueShape {
    Str,
    Num,
    StrOrList2,
    NumOrList2,
    /// Two-element list of numbers or percent strings.
    PointList2,
}

#[derive(Clone, Copy, Debug)]
enum ParamKind {
    Term { sort: TermSort, allow_set: bool },
    Value(ValueShape),
    /// A nested spatial predicate call producing a per-frame vector.
    SpatialExpr,
}

#[derive(Clone, Copy, Debug)]
pub struct Signature {
    params: &'static [ParamKind],
}

impl Signature {
    pub fn arity(&self) -> usize {
        self.params.len()
    }

    /// Term sort of parameter `i`, if it is a term parameter.
    pub fn term_sort(&self, i: usize) -> Option<TermSort> {
        match self.params.get(i)? {
            ParamKind::Term { sort, .. } => Some(*sort),
            _ => None,
        }
    }
}

use ParamKind::*;

const OBJ_TERM: ParamKind = Term {
    sort: TermSort::Object,
    allow_set: false,
};
const OBJ_TERM_OR_SET: ParamKind = Term {
    sort: TermSort::Object,
    allow_set: true,
};
const MOTION_TERM: ParamKind = Term {
    sort: TermSort::Motion,
    allow_set: false,
};

/// Canonical signature table. Every name the engine executes appears here.
pub fn signature(name: &str) -> Option<Signature> {
    let params: &'static [ParamKind] = match name {
        "shape" | "color" | "id" => &[OBJ_TERM, Value(ValueShape::Str)],
        "type" => &[MOTION_TERM, Value(ValueShape::Str)],
        "direction" => &[MOTION_TERM, Value(ValueShape::StrOrList2)],
        "magnitude" => &[MOTION_TERM, Value(ValueShape::NumOrList2)],
        "origin" => &[MOTION_TERM, Value(ValueShape::PointList2)],
        "duration" => &[MOTION_TERM, Value(ValueShape::Num)],
        "agent" => &[MOTION_TERM, OBJ_TERM_OR_SET],
        "post" => &[MOTION_TERM, SpatialExpr],
        "t_before" | "t_while" | "t_after" => &[MOTION_TERM, MOTION_TERM],
        "t_rel" => &[MOTION_TERM, MOTION_TERM, Value(ValueShape::Str)],
        // The 13 low-level Allen relations are first-class temporal
        // predicates.
        "precedes" | "meets" | "overlaps" | "finished_by" | "contains" | "starts" | "equals"
        | "started_by" | "during" | "finishes" | "overlapped_by" | "met_by" | "preceded_by" => {
            &[MOTION_TERM, MOTION_TERM]
        }
        "s_top" | "s_bottom" | "s_left" | "s_right" | "s_border" | "s_intersect"
        | "s_top_border" | "s_bottom_border" | "s_left_border" | "s_right_border"
        | "s_bottom_border_flush" => &[OBJ_TERM, OBJ_TERM],
        "s_rel" => &[OBJ_TERM, OBJ_TERM, Value(ValueShape::Str), Value(ValueShape::Str)],
        _ => return None,
    };
    Some(Signature { params })
}

/// Short-name aliases for canonical predicate names.
const ALIASES: &[(&str, &str)] = &[
    ("shp", "shape"),
    ("clr", "color"),
    ("dir", "direction"),
    ("mag", "magnitude"),
    ("orig", "origin"),
    ("dur", "duration"),
    ("agt", "agent"),
    ("before", "t_before"),
    ("while", "t_while"),
    ("after", "t_after"),
    ("top", "s_top"),
    ("bottom", "s_bottom"),
    ("left", "s_left"),
    ("right", "s_right"),
    ("border", "s_border"),
    ("intersect", "s_intersect"),
    ("top_border", "s_top_border"),
    ("bottom_border", "s_bottom_border"),
    ("left_border", "s_left_border"),
    ("right_border", "s_right_border"),
    ("bottom_border_flush", "s_bottom_border_flush"),
];

/// Motion-type value aliases.
const TYPE_VALUES: &[(&str, &str)] = &[
    ("trn", "translate"),
    ("rot", "rotate"),
    ("scl", "scale"),
    ("translate", "translate"),
    ("rotate", "rotate"),
    ("scale", "scale"),
];

fn canonical_name(name: &str) -> Option<&'static str> {
    if let Some((_, long)) = ALIASES.iter().find(|(short, _)| *short == name) {
        return Some(long);
    }
    // Canonical names map to themselves.
    signature(name).map(|_| {
        ALL_CANONICAL
            .iter()
            .copied()
            .find(|c| *c == name)
            .expect("signature implies membership")
    })
}

const ALL_CANONICAL: &[&str] = &[
    "shape",
    "color",
    "id",
    "type",
    "direction",
    "magnitude",
    "origin",
    "duration",
    "agent",
    "post",
    "t_before",
    "t_while",
    "t_after",
    "t_rel",
    "precedes",
    "meets",
    "overlaps",
    "finished_by",
    "contains",
    "starts",
    "equals",
    "started_by",
    "during",
    "finishes",
    "overlapped_by",
    "met_by",
    "preceded_by",
    "s_top",
    "s_bottom",
    "s_left",
    "s_right",
    "s_border",
    "s_intersect",
    "s_top_border",
    "s_bottom_border",
    "s_left_border",
    "s_right_border",
    "s_bottom_border_flush",
    "s_rel",
];

fn nearest_name(name: &str) -> Option<String> {
    let mut best: Option<(usize, &str)> = None;
    for candidate in ALL_CANONICAL
        .iter()
        .copied()
        .chain(ALIASES.iter().map(|(s, _)| *s))
    {
        let d = strsim::levenshtein(name, candidate);
        if best.map(|(bd, _)| d < bd).unwrap_or(true) {
            best = Some((d, candidate));
        }
    }
    best.filter(|(d, _)| *d <= 3).map(|(_, n)| n.to_string())
}

/// Sort of a name bound at statement level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BindingSort {
    Object,
    Motion,
    ObjectSet,
    MotionSet,
    Bool,
}

/// A parsed program with canonical names, plus binding sorts and warnings.
#[derive(Clone, Debug)]
pub struct ResolvedProgram {
    pub program: Program,
    pub binding_sorts: BTreeMap<String, BindingSort>,
    pub warnings: Vec<String>,
}

/// Resolve aliases and check arity, sorts, value shapes, and variable
/// scoping. Idempotent: resolving the output again is a no-op.
pub fn resolve(program: &Program) -> Result<ResolvedProgram, LangError> {
    let mut env: BTreeMap<String, BindingSort> = BTreeMap::new();
    let mut warnings = Vec::new();
    let mut statements = Vec::new();

    for (i, stmt) in program.statements.iter().enumerate() {
        let cx = Ctx {
            env: &env,
            lambda: None,
        };
        let expr = resolve_expr(&stmt.expr, &cx)?;

        let produced: Option<BindingSort> = match &expr {
            Expr::Quantifier { kind, sort, .. } => Some(match (kind, sort) {
                (QuantKind::Iota, SortName::Object) => BindingSort::Object,
                (QuantKind::Iota, SortName::Motion) => BindingSort::Motion,
                (QuantKind::All, SortName::Object) => BindingSort::ObjectSet,
                (QuantKind::All, SortName::Motion) => BindingSort::MotionSet,
                (QuantKind::Exists, _) => BindingSort::Bool,
            }),
            _ => None,
        };

        match (&stmt.binding, produced) {
            (Some(name), Some(sort)) => {
                if env.insert(name.clone(), sort).is_some() {
                    return Err(LangError::Sort(format!(
                        "binding {name:?} is defined more than once"
                    )));
                }
            }
            (Some(name), None) => {
                // Binding a plain boolean expression; usable only as a check.
                if env.insert(name.clone(), BindingSort::Bool).is_some() {
                    return Err(LangError::Sort(format!(
                        "binding {name:?} is defined more than once"
                    )));
                }
            }
            (None, Some(BindingSort::Object | BindingSort::Motion)) => {
                warnings.push(format!(
                    "statement {}: iota result is not bound to a name and cannot be referenced",
                    i + 1
                ));
            }
            _ => {}
        }

        statements.push(Statement {
            binding: stmt.binding.clone(),
            expr,
            span: stmt.span,
        });
    }

    Ok(ResolvedProgram {
        program: Program {
            statements,
            source: program.source.clone(),
        },
        binding_sorts: env,
        warnings,
    })
}

struct Ctx<'a> {
    env: &'a BTreeMap<String, BindingSort>,
    lambda: Option<(&'a str, TermSort)>,
}

fn resolve_expr(expr: &Expr, cx: &Ctx) -> Result<Expr, LangError> {
    match expr {
        Expr::Quantifier {
            kind,
            sort,
            var,
            body,
        } => {
            let term_sort = match sort {
                SortName::Object => TermSort::Object,
                SortName::Motion => TermSort::Motion,
            };
            let inner = Ctx {
                env: cx.env,
                lambda: Some((var.as_str(), term_sort)),
            };
            Ok(Expr::Quantifier {
                kind: *kind,
                sort: *sort,
                var: var.clone(),
                body: Box::new(resolve_expr(body, &inner)?),
            })
        }
        Expr::And(l, r) => Ok(Expr::And(
            Box::new(resolve_expr(l, cx)?),
            Box::new(resolve_expr(r, cx)?),
        )),
        Expr::Or(l, r) => Ok(Expr::Or(
            Box::new(resolve_expr(l, cx)?),
            Box::new(resolve_expr(r, cx)?),
        )),
        Expr::Not(e) => Ok(Expr::Not(Box::new(resolve_expr(e, cx)?))),
        Expr::Call { name, args } => resolve_call(name, args, cx),
    }
}

fn resolve_call(name: &str, args: &[Arg], cx: &Ctx) -> Result<Expr, LangError> {
    let canonical = canonical_name(name).ok_or_else(|| LangError::UnknownPredicate {
        name: name.to_string(),
        suggestion: nearest_name(name),
    })?;
    let sig = signature(canonical).expect("canonical names have signatures");

    if args.len() != sig.arity() {
        return Err(LangError::Arity {
            name: canonical.to_string(),
            expected: sig.arity(),
            found: args.len(),
        });
    }

    let mut out_args = Vec::with_capacity(args.len());
    for (param, arg) in sig.params.iter().zip(args.iter()) {
        let resolved = match param {
            Term { sort, allow_set } => resolve_term(canonical, arg, *sort, *allow_set, cx)?,
            Value(shape) => resolve_value(canonical, arg, *shape)?,
            SpatialExpr => resolve_spatial_expr(canonical, arg, cx)?,
        };
        out_args.push(resolved);
    }

    Ok(Expr::Call {
        name: canonical.to_string(),
        args: out_args,
    })
}

fn term_sort_of_binding(sort: BindingSort) -> Option<(TermSort, bool)> {
    match sort {
        BindingSort::Object => Some((TermSort::Object, false)),
        BindingSort::Motion => Some((TermSort::Motion, false)),
        BindingSort::ObjectSet => Some((TermSort::Object, true)),
        BindingSort::MotionSet => Some((TermSort::Motion, true)),
        BindingSort::Bool => None,
    }
}

fn resolve_term(
    pred: &str,
    arg: &Arg,
    want: TermSort,
    allow_set: bool,
    cx: &Ctx,
) -> Result<Arg, LangError> {
    match arg {
        Arg::Var(v) => {
            if let Some((lv, lsort)) = cx.lambda {
                if lv == v {
                    if lsort != want {
                        return Err(LangError::Sort(format!(
                            "{pred} expects a {} term, but {v:?} is a {} variable",
                            want.name(),
                            lsort.name()
                        )));
                    }
                    return Ok(arg.clone());
                }
            }
            match cx.env.get(v) {
                None => Err(LangError::UnboundVariable(v.clone())),
                Some(bsort) => {
                    let (sort, is_set) = term_sort_of_binding(*bsort).ok_or_else(|| {
                        LangError::Sort(format!(
                            "{pred} expects a {} term, but {v:?} holds a boolean",
                            want.name()
                        ))
                    })?;
                    if sort != want {
                        return Err(LangError::Sort(format!(
                            "{pred} expects a {} term, but {v:?} is a {} binding",
                            want.name(),
                            sort.name()
                        )));
                    }
                    if is_set && !allow_set {
                        return Err(LangError::Sort(format!(
                            "{pred} expects a single {} term, but {v:?} is a set binding",
                            want.name()
                        )));
                    }
                    Ok(arg.clone())
                }
            }
        }
        Arg::Expr(Expr::Quantifier {
            kind,
            sort,
            var,
            body,
        }) => {
            let got = match sort {
                SortName::Object => TermSort::Object,
                SortName::Motion => TermSort::Motion,
            };
            if got != want {
                return Err(LangError::Sort(format!(
                    "{pred} expects a {} term, found a {} quantifier",
                    want.name(),
                    got.name()
                )));
            }
            match kind {
                QuantKind::Iota => {}
                QuantKind::All if allow_set => {}
                QuantKind::All => {
                    return Err(LangError::Sort(format!(
                        "{pred} expects a single {} term; all(...) produces a set",
                        want.name()
                    )))
                }
                QuantKind::Exists => {
                    return Err(LangError::Sort(format!(
                        "exists(...) produces a boolean and cannot be a {} term for {pred}",
                        want.name()
                    )))
                }
            }
            let inner = Ctx {
                env: cx.env,
                lambda: Some((var.as_str(), got)),
            };
            Ok(Arg::Expr(Expr::Quantifier {
                kind: *kind,
                sort: *sort,
                var: var.clone(),
                body: Box::new(resolve_expr(body, &inner)?),
            }))
        }
        other => Err(LangError::Sort(format!(
            "{pred} expects a {} term, found {}",
            want.name(),
            describe_arg(other)
        ))),
    }
}

fn resolve_value(pred: &str, arg: &Arg, shape: ValueShape) -> Result<Arg, LangError> {
    let fail = |detail: String| Err(LangError::Sort(detail));
    match shape {
        ValueShape::Str => match arg {
            Arg::Str(s) => {
                let canon = match pred {
                    "type" => Some(canonical_type_value(pred, s)?),
                    "shape" => {
                        if ShapeClass::from_name(s).is_none() {
                            return fail(format!("shape value {s:?} is not a shape class"));
                        }
                        None
                    }
                    "color" => {
                        if parse_color(s).is_err() {
                            return fail(format!("color value {s:?} is not a known color"));
                        }
                        None
                    }
                    "t_rel" => {
                        if AllenRelation::from_name(s).is_none() {
                            return fail(format!("{s:?} is not one of the 13 interval relations"));
                        }
                        None
                    }
                    "s_rel" => {
                        if AllenRelation::from_name(s).is_none() {
                            return fail(format!("{s:?} is not one of the 13 interval relations"));
                        }
                        None
                    }
                    _ => None,
                };
                Ok(Arg::Str(canon.unwrap_or_else(|| s.clone())))
            }
            other => fail(format!(
                "{pred} expects a string value, found {}",
                describe_arg(other)
            )),
        },
        ValueShape::Num => match arg {
            Arg::Num(_) => Ok(arg.clone()),
            other => fail(format!(
                "{pred} expects a numeric value, found {}",
                describe_arg(other)
            )),
        },
        ValueShape::StrOrList2 => match arg {
            Arg::Str(s) => {
                if s != "clockwise" && s != "counterclockwise" {
                    return fail(format!(
                        "{pred} string value must be \"clockwise\" or \"counterclockwise\", found {s:?}"
                    ));
                }
                Ok(arg.clone())
            }
            Arg::List(items) => {
                check_list2_numeric(pred, items)?;
                Ok(arg.clone())
            }
            other => fail(format!(
                "{pred} expects a direction string or 2-vector, found {}",
                describe_arg(other)
            )),
        },
        ValueShape::NumOrList2 => match arg {
            Arg::Num(_) => Ok(arg.clone()),
            Arg::List(items) => {
                check_list2_numeric(pred, items)?;
                Ok(arg.clone())
            }
            other => fail(format!(
                "{pred} expects a number or 2-vector, found {}",
                describe_arg(other)
            )),
        },
        ValueShape::PointList2 => match arg {
            Arg::List(items) => {
                if items.len() != 2 {
                    return fail(format!(
                        "{pred} expects a 2-element point, found {} element(s)",
                        items.len()
                    ));
                }
                for item in items {
                    let ok = match item {
                        ArgScalar::Num(_) => true,
                        ArgScalar::Str(_) => item.as_percent().is_some(),
                    };
                    if !ok {
                        return fail(format!(
                            "{pred} point components must be numbers or percent strings like \"50%\""
                        ));
                    }
                }
                Ok(arg.clone())
            }
            other => fail(format!(
                "{pred} expects a 2-element point, found {}",
                describe_arg(other)
            )),
        },
    }
}

fn canonical_type_value(pred: &str, s: &str) -> Result<String, LangError> {
    TYPE_VALUES
        .iter()
        .find(|(alias, _)| *alias == s)
        .map(|(_, canon)| canon.to_string())
        .ok_or_else(|| {
            LangError::Sort(format!(
                "{pred} value must be one of translate/rotate/scale (or trn/rot/scl), found {s:?}"
            ))
        })
}

fn resolve_spatial_expr(pred: &str, arg: &Arg, cx: &Ctx) -> Result<Arg, LangError> {
    match arg {
        Arg::Expr(Expr::Call { name, args }) => {
            let resolved = resolve_call(name, args, cx)?;
            if let Expr::Call { name: canon, .. } = &resolved {
                if !canon.starts_with("s_") {
                    return Err(LangError::Sort(format!(
                        "{pred} expects a spatial predicate argument, found {canon}"
                    )));
                }
            }
            Ok(Arg::Expr(resolved))
        }
        other => Err(LangError::Sort(format!(
            "{pred} expects a spatial predicate argument, found {}",
            describe_arg(other)
        ))),
    }
}

fn check_list2_numeric(pred: &str, items: &[ArgScalar]) -> Result<(), LangError> {
    if items.len() != 2 || items.iter().any(|i| i.as_number().is_none()) {
        return Err(LangError::Sort(format!(
            "{pred} expects a 2-element numeric vector"
        )));
    }
    Ok(())
}

fn describe_arg(arg: &Arg) -> String {
    match arg {
        Arg::Var(v) => format!("variable {v:?}"),
        Arg::Num(n) => format!("number {n}"),
        Arg::Str(s) => format!("string {s:?}"),
        Arg::List(_) => "a list".to_string(),
        Arg::Expr(Expr::Quantifier { kind, .. }) => format!("{}(...)", kind.name()),
        Arg::Expr(_) => "an expression".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse;

    fn resolve_src(src: &str) -> Result<ResolvedProgram, LangError> {
        resolve(&parse(src).unwrap())
    }

    #[test]
    fn short_names_canonicalize() {
        let r = resolve_src(
            "m_1 = iota(Motion, lambda m: type(m, \"trn\"))\nm_2 = iota(Motion, lambda m: type(m, \"rot\"))\nwhile(m_1, m_2)",
        )
        .unwrap();
        match &r.program.statements[2].expr {
            Expr::Call { name, .. } => assert_eq!(name, "t_while"),
            other => panic!("unexpected {other:?}"),
        }
        // Value aliases canonicalize too.
        match &r.program.statements[0].expr {
            Expr::Quantifier { body, .. } => match &**body {
                Expr::Call { args, .. } => assert_eq!(args[1], Arg::Str("translate".into())),
                other => panic!("unexpected {other:?}"),
            },
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shp_is_shape() {
        let r = resolve_src("o = iota(Object, lambda x: shp(x, \"square\"))").unwrap();
        match &r.program.statements[0].expr {
            Expr::Quantifier { body, .. } => match &**body {
                Expr::Call { name, .. } => assert_eq!(name, "shape"),
                other => panic!("unexpected {other:?}"),
            },
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_predicate_suggests_nearest() {
        let err = resolve_src("o = iota(Object, lambda x: shapee(x, \"square\"))").unwrap_err();
        match err {
            LangError::UnknownPredicate { name, suggestion } => {
                assert_eq!(name, "shapee");
                assert_eq!(suggestion.as_deref(), Some("shape"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unbound_variable_is_detected() {
        let err = resolve_src("t_before(m_1, m_2)").unwrap_err();
        assert!(matches!(err, LangError::UnboundVariable(v) if v == "m_1"));
    }

    #[test]
    fn sort_mismatch_is_detected() {
        let err = resolve_src(
            "o_1 = iota(Object, lambda o: shape(o, \"square\"))\nexists(Motion, lambda m: t_before(m, o_1))",
        )
        .unwrap_err();
        assert!(matches!(err, LangError::Sort(_)));
    }

    #[test]
    fn arity_is_checked() {
        let err = resolve_src("o_1 = iota(Object, lambda o: shape(o))").unwrap_err();
        match err {
            LangError::Arity {
                name,
                expected,
                found,
            } => {
                assert_eq!(name, "shape");
                assert_eq!(expected, 2);
                assert_eq!(found, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn resolution_is_idempotent() {
        let r1 = resolve_src(
            "o_1 = iota(Object, lambda o: clr(o, \"blue\") and shp(o, \"circle\"))\nexists(Motion, lambda m: dir(m, [0.0, 1.0]) and agt(m, o_1))",
        )
        .unwrap();
        let r2 = resolve(&r1.program).unwrap();
        assert_eq!(r1.program.statements, r2.program.statements);
    }

    #[test]
    fn bare_iota_warns() {
        let r = resolve_src("iota(Object, lambda o: shape(o, \"square\"))").unwrap();
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn every_documented_name_parses_and_resolves() {
        let program = r#"
o_1 = iota(Object, lambda o: shp(o, "square") and clr(o, "black") and id(o, "sq"))
o_2 = iota(Object, lambda o: shape(o, "circle") and color(o, "blue"))
m_1 = iota(Motion, lambda m: type(m, "translate") and dir(m, [0.0, 1.0]) and mag(m, 100.0) and dur(m, 1.0) and agt(m, o_1))
m_2 = iota(Motion, lambda m: type(m, "rot") and direction(m, "clockwise") and magnitude(m, 90.0) and orig(m, ["50%", "50%"]) and duration(m, 1.0) and agent(m, o_2))
m_3 = iota(Motion, lambda m: type(m, "scl") and direction(m, [1.0, 1.0]) and magnitude(m, [2.0, 2.0]) and origin(m, [400.0, 200.0]) and post(m, intersect(o_1, o_2)) and agent(m, o_2))
before(m_1, m_2)
while(m_2, m_3)
after(m_3, m_1)
t_before(m_1, m_2)
t_while(m_2, m_3)
t_after(m_3, m_1)
t_rel(m_1, m_2, "meets")
precedes(m_1, m_2)
meets(m_1, m_2)
overlaps(m_1, m_2)
finished_by(m_1, m_2)
contains(m_1, m_2)
starts(m_1, m_2)
equals(m_1, m_2)
started_by(m_1, m_2)
during(m_1, m_2)
finishes(m_1, m_2)
overlapped_by(m_1, m_2)
met_by(m_1, m_2)
preceded_by(m_1, m_2)
top(o_1, o_2)
bottom(o_1, o_2)
left(o_1, o_2)
right(o_1, o_2)
border(o_1, o_2)
intersect(o_1, o_2)
top_border(o_1, o_2)
bottom_border(o_1, o_2)
left_border(o_1, o_2)
right_border(o_1, o_2)
bottom_border_flush(o_1, o_2)
s_top(o_1, o_2)
s_bottom(o_1, o_2)
s_left(o_1, o_2)
s_right(o_1, o_2)
s_border(o_1, o_2)
s_intersect(o_1, o_2)
s_top_border(o_1, o_2)
s_bottom_border(o_1, o_2)
s_left_border(o_1, o_2)
s_right_border(o_1, o_2)
s_bottom_border_flush(o_1, o_2)
s_rel(o_1, o_2, "precedes", "equals")
exists(Motion, lambda m: type(m, "scale") and agent(m, all(Object, lambda o: shape(o, "circle"))))
"#;
        let r = resolve_src(program).unwrap();
        assert!(r.warnings.is_empty());
    }
}
