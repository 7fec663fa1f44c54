//! Program execution: boolean-tensor semantics for every predicate,
//! quantifier aggregation, binding environments, and per-statement
//! verdicts with predicate-level evidence.

mod predicates;
mod tensor;

pub use tensor::{runs_of, TensorKind, TensorValue};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{FrameInterval, MaskRegistry};
use crate::config::Tolerances;
use crate::lang::{Arg, Expr, QuantKind, ResolvedProgram, SortName, Statement};
use crate::motion::MotionChannels;
use crate::scene::Scene;

/// Machine-stable failure classes attached to trace entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoteCode {
    /// A temporal operand resolved to no runs (or failed to resolve).
    NoValidRuns,
    /// An iota quantifier matched no row.
    IotaEmpty,
    /// An object term did not resolve.
    UnresolvedObject,
    /// A post condition did not hold on the last frame of a run.
    PostEndMissed,
    /// Fixed points drift across the run beyond the configured spread.
    OriginUnstable,
    /// The predicate could not be evaluated against an unresolved term.
    NotEvaluable,
}

impl NoteCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            NoteCode::NoValidRuns => "no_valid_runs",
            NoteCode::IotaEmpty => "iota_empty",
            NoteCode::UnresolvedObject => "unresolved_object",
            NoteCode::PostEndMissed => "post_end_missed",
            NoteCode::OriginUnstable => "origin_unstable",
            NoteCode::NotEvaluable => "not_evaluable",
        }
    }
}

/// A structured note: stable code plus free text.
#[derive(Clone, Debug, PartialEq)]
pub struct Note {
    pub code: NoteCode,
    pub text: String,
}

impl Note {
    pub fn new(code: NoteCode, text: impl Into<String>) -> Self {
        Note {
            code,
            text: text.into(),
        }
    }

    /// Rendered as `code: text` in reports.
    pub fn render(&self) -> String {
        format!("{}: {}", self.code.as_str(), self.text)
    }
}

/// One predicate (or quantifier) evaluation within a statement.
#[derive(Clone, Debug)]
pub struct PredicateTrace {
    pub name: String,
    pub args: String,
    pub value: bool,
    pub true_ranges: Vec<FrameInterval>,
    pub note: Option<Note>,
}

/// Outcome of one statement.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub source: String,
    pub binding: Option<String>,
    pub value: bool,
    pub predicates: Vec<PredicateTrace>,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("unknown color name {0:?}")]
    UnknownColorName(String),
    #[error("{predicate}: {detail}")]
    BadArgumentShape { predicate: String, detail: String },
    #[error("internal evaluation error: {0}")]
    Internal(String),
}

/// A bound motion: a row of the animation matrix restricted to the frames
/// where its defining expression holds, segmented into runs.
#[derive(Clone, Debug)]
pub struct MotionBinding {
    pub row: usize,
    pub bits: Vec<bool>,
    pub runs: Vec<FrameInterval>,
}

#[derive(Clone, Debug)]
pub enum BindingValue {
    Object(usize),
    ObjectSet(Vec<usize>),
    Motion(MotionBinding),
    MotionSet(Vec<MotionBinding>),
    Bool(bool),
}

/// Execute a resolved program against the animation matrix.
///
/// Statements evaluate in order and bindings accumulate. Statements whose
/// sub-terms fail to resolve evaluate to false with an explanatory note;
/// only structural misuse aborts with an [`EvalError`].
pub fn run_program(
    program: &ResolvedProgram,
    scene: &Scene,
    channels: &MotionChannels,
    cfg: &Tolerances,
    masks: &MaskRegistry,
) -> Result<Vec<Verdict>, EvalError> {
    let mut evaluator = Evaluator {
        scene,
        channels,
        cfg,
        masks,
        rows: scene.objects.len(),
        cols: channels.num_frames,
        env: BTreeMap::new(),
    };
    let mut verdicts = Vec::new();
    for (i, stmt) in program.program.statements.iter().enumerate() {
        verdicts.push(evaluator.eval_statement(stmt, program.program.statement_source(i))?);
    }
    Ok(verdicts)
}

pub(crate) struct Evaluator<'a> {
    pub scene: &'a Scene,
    pub channels: &'a MotionChannels,
    pub cfg: &'a Tolerances,
    pub masks: &'a MaskRegistry,
    pub rows: usize,
    pub cols: usize,
    env: BTreeMap<String, Result<BindingValue, Note>>,
}

/// Scope of lambda-variable evaluation inside a quantifier body.
pub(crate) struct LambdaCtx {
    pub var: String,
    /// Conjunction of the left-sibling conjuncts evaluated so far; run
    /// derivation for `post` and relational predicates over the still
    /// unresolved variable reads this.
    pub accum: TensorValue,
}

/// Collects trace entries; nested scopes finalize against the row their
/// quantifier selects.
pub(crate) struct Tracer {
    scopes: Vec<Scope>,
}

struct Scope {
    entries: Vec<Entry>,
    agent_hint: Option<usize>,
}

enum EntryBody {
    Tensor {
        tensor: TensorValue,
        row_notes: BTreeMap<usize, Note>,
    },
    Fixed {
        value: bool,
        ranges: Vec<FrameInterval>,
    },
}

struct Entry {
    name: String,
    args: String,
    note: Option<Note>,
    body: EntryBody,
    /// Already finalized (inherited from a closed inner scope).
    done: Option<PredicateTrace>,
}

impl Tracer {
    fn new() -> Self {
        Tracer {
            scopes: vec![Scope {
                entries: Vec::new(),
                agent_hint: None,
            }],
        }
    }

    pub fn push_scope(&mut self) {
        self.scopes.push(Scope {
            entries: Vec::new(),
            agent_hint: None,
        });
    }

    pub fn set_agent_hint(&mut self, row: usize) {
        if let Some(scope) = self.scopes.last_mut() {
            scope.agent_hint.get_or_insert(row);
        }
    }

    fn agent_hint(&self) -> Option<usize> {
        self.scopes.last().and_then(|s| s.agent_hint)
    }

    pub fn record_tensor(
        &mut self,
        name: &str,
        args: String,
        tensor: TensorValue,
        note: Option<Note>,
        row_notes: BTreeMap<usize, Note>,
    ) {
        self.scopes.last_mut().expect("scope").entries.push(Entry {
            name: name.to_string(),
            args,
            note,
            body: EntryBody::Tensor { tensor, row_notes },
            done: None,
        });
    }

    pub fn record_fixed(
        &mut self,
        name: &str,
        args: String,
        value: bool,
        ranges: Vec<FrameInterval>,
        note: Option<Note>,
    ) {
        self.scopes.last_mut().expect("scope").entries.push(Entry {
            name: name.to_string(),
            args,
            note,
            body: EntryBody::Fixed { value, ranges },
            done: None,
        });
    }

    /// Close the current scope, finalizing its entries against `row`, and
    /// splice them into the parent in evaluation order.
    pub fn close_scope(&mut self, row: Option<usize>) {
        let scope = self.scopes.pop().expect("scope underflow");
        let parent = self.scopes.last_mut().expect("root scope present");
        for entry in scope.entries {
            let done = finalize(entry, row);
            parent.entries.push(done);
        }
    }

    fn finish(mut self, row: Option<usize>) -> Vec<PredicateTrace> {
        assert_eq!(self.scopes.len(), 1, "unbalanced tracer scopes");
        let scope = self.scopes.pop().unwrap();
        scope
            .entries
            .into_iter()
            .map(|e| match e.done {
                Some(done) => done,
                None => into_trace(e, row),
            })
            .collect()
    }
}

fn finalize(entry: Entry, row: Option<usize>) -> Entry {
    let trace = match entry.done {
        Some(done) => done,
        None => into_trace(entry, row),
    };
    Entry {
        name: String::new(),
        args: String::new(),
        note: None,
        body: EntryBody::Fixed {
            value: trace.value,
            ranges: Vec::new(),
        },
        done: Some(trace),
    }
}

fn into_trace(entry: Entry, row: Option<usize>) -> PredicateTrace {
    match entry.body {
        EntryBody::Fixed { value, ranges } => PredicateTrace {
            name: entry.name,
            args: entry.args,
            value,
            true_ranges: ranges,
            note: entry.note,
        },
        EntryBody::Tensor { tensor, row_notes } => {
            if tensor.rows() == 0 && tensor.kind() == TensorKind::Cell {
                return PredicateTrace {
                    name: entry.name,
                    args: entry.args,
                    value: false,
                    true_ranges: Vec::new(),
                    note: entry.note,
                };
            }
            let row = row.unwrap_or_else(|| best_row(&tensor));
            let value = tensor.row_any(row);
            let note = row_notes.get(&row).cloned().or(entry.note);
            PredicateTrace {
                name: entry.name,
                args: entry.args,
                value,
                true_ranges: tensor.row_runs(row),
                note,
            }
        }
    }
}

/// Reporting row when no quantifier selected one: the row with the most
/// true cells, lowest index on ties.
fn best_row(tensor: &TensorValue) -> usize {
    let mut best = 0usize;
    let mut best_count = 0usize;
    for r in 0..tensor.rows().max(1) {
        let count = if tensor.rows() == 0 {
            0
        } else {
            tensor.row_count_true(r)
        };
        if count > best_count {
            best = r;
            best_count = count;
        }
    }
    best
}

struct QuantOutcome {
    value: bool,
    outcome: Result<BindingValue, Note>,
}

impl<'a> Evaluator<'a> {
    fn eval_statement(&mut self, stmt: &Statement, source: &str) -> Result<Verdict, EvalError> {
        let mut tracer = Tracer::new();
        let (value, binding_outcome, final_row) = match &stmt.expr {
            Expr::Quantifier {
                kind,
                sort,
                var,
                body,
            } => {
                let q = self.eval_quantifier(*kind, *sort, var, body, &mut tracer)?;
                let row = match &q.outcome {
                    Ok(BindingValue::Object(r)) => Some(*r),
                    Ok(BindingValue::Motion(m)) => Some(m.row),
                    Ok(BindingValue::ObjectSet(v)) => v.first().copied(),
                    Ok(BindingValue::MotionSet(v)) => v.first().map(|m| m.row),
                    _ => None,
                };
                (q.value, Some(q.outcome), row)
            }
            expr => {
                let tensor = self.eval_expr(expr, &mut None, &mut tracer)?;
                let value = tensor.any();
                (value, Some(Ok(BindingValue::Bool(value))), None)
            }
        };

        if let (Some(name), Some(outcome)) = (&stmt.binding, binding_outcome) {
            self.env.insert(name.clone(), outcome);
        }

        Ok(Verdict {
            source: source.to_string(),
            binding: stmt.binding.clone(),
            value,
            predicates: tracer.finish(final_row),
        })
    }

    fn eval_quantifier(
        &mut self,
        kind: QuantKind,
        sort: SortName,
        var: &str,
        body: &Expr,
        tracer: &mut Tracer,
    ) -> Result<QuantOutcome, EvalError> {
        tracer.push_scope();
        let mut ctx = Some(LambdaCtx {
            var: var.to_string(),
            accum: TensorValue::cells(self.rows, self.cols, true),
        });
        let tensor = self.eval_expr(body, &mut ctx, tracer)?;
        let matching = tensor.rows_with_any();

        let make_motion = |r: usize| MotionBinding {
            row: r,
            bits: tensor.row_bits(r),
            runs: tensor.row_runs(r),
        };

        let (value, outcome): (bool, Result<BindingValue, Note>) = match kind {
            QuantKind::Exists => {
                let v = tensor.any();
                (v, Ok(BindingValue::Bool(v)))
            }
            QuantKind::Iota => match matching.first() {
                Some(&r) => (
                    true,
                    Ok(match sort {
                        SortName::Object => BindingValue::Object(r),
                        SortName::Motion => BindingValue::Motion(make_motion(r)),
                    }),
                ),
                None => {
                    let what = match sort {
                        SortName::Object => "object",
                        SortName::Motion => "motion",
                    };
                    (
                        false,
                        Err(Note::new(
                            NoteCode::IotaEmpty,
                            format!("iota found no {what} satisfying the expression"),
                        )),
                    )
                }
            },
            QuantKind::All => {
                let v = !matching.is_empty();
                (
                    v,
                    Ok(match sort {
                        SortName::Object => BindingValue::ObjectSet(matching.clone()),
                        SortName::Motion => {
                            BindingValue::MotionSet(matching.iter().map(|&r| make_motion(r)).collect())
                        }
                    }),
                )
            }
        };

        let chosen_row = matching
            .first()
            .copied()
            .or_else(|| tracer.agent_hint())
            .unwrap_or_else(|| best_row(&tensor));

        tracer.close_scope(Some(chosen_row));
        tracer.record_fixed(
            kind.name(),
            format!("{}, {}", sort.name(), var),
            value,
            tensor.row_runs(chosen_row),
            outcome.as_ref().err().cloned(),
        );

        Ok(QuantOutcome { value, outcome })
    }

    pub(crate) fn eval_expr(
        &mut self,
        expr: &Expr,
        ctx: &mut Option<LambdaCtx>,
        tracer: &mut Tracer,
    ) -> Result<TensorValue, EvalError> {
        match expr {
            Expr::And(l, r) => {
                let tl = self.eval_expr(l, ctx, tracer)?;
                let saved = ctx.as_ref().map(|c| c.accum.clone());
                if let Some(c) = ctx.as_mut() {
                    c.accum = c.accum.and(&tl);
                }
                let tr = self.eval_expr(r, ctx, tracer)?;
                if let (Some(c), Some(saved)) = (ctx.as_mut(), saved) {
                    c.accum = saved;
                }
                Ok(tl.and(&tr))
            }
            Expr::Or(l, r) => {
                // Disjuncts do not narrow each other; run derivation inside
                // them falls back to channel activity.
                let saved = ctx.as_ref().map(|c| c.accum.clone());
                if let Some(c) = ctx.as_mut() {
                    c.accum = TensorValue::cells(self.rows, self.cols, true);
                }
                let tl = self.eval_expr(l, ctx, tracer)?;
                let tr = self.eval_expr(r, ctx, tracer)?;
                if let (Some(c), Some(saved)) = (ctx.as_mut(), saved) {
                    c.accum = saved;
                }
                Ok(tl.or(&tr))
            }
            Expr::Not(inner) => {
                let saved = ctx.as_ref().map(|c| c.accum.clone());
                if let Some(c) = ctx.as_mut() {
                    c.accum = TensorValue::cells(self.rows, self.cols, true);
                }
                let t = self.eval_expr(inner, ctx, tracer)?;
                if let (Some(c), Some(saved)) = (ctx.as_mut(), saved) {
                    c.accum = saved;
                }
                Ok(t.not())
            }
            Expr::Call { name, args } => self.eval_call(name, args, ctx, tracer),
            Expr::Quantifier { .. } => Err(EvalError::Internal(
                "quantifier in boolean position survived parsing".into(),
            )),
        }
    }

    pub(crate) fn lookup_env(&self, name: &str) -> Option<&Result<BindingValue, Note>> {
        self.env.get(name)
    }

    fn eval_call(
        &mut self,
        name: &str,
        args: &[Arg],
        ctx: &mut Option<LambdaCtx>,
        tracer: &mut Tracer,
    ) -> Result<TensorValue, EvalError> {
        predicates::eval_call(self, name, args, ctx, tracer)
    }

    /// Evaluate a nested quantifier appearing as a term argument.
    pub(crate) fn eval_nested_quantifier(
        &mut self,
        kind: QuantKind,
        sort: SortName,
        var: &str,
        body: &Expr,
        tracer: &mut Tracer,
    ) -> Result<Result<BindingValue, Note>, EvalError> {
        let q = self.eval_quantifier(kind, sort, var, body, tracer)?;
        Ok(q.outcome)
    }
}

pub(crate) fn display_args(args: &[Arg]) -> String {
    args.iter()
        .map(crate::lang::format_arg)
        .collect::<Vec<_>>()
        .join(", ")
}
