//! Verification report serialization.
//!
//! JSON schema (stable key order, floats with six decimals):
//!
//! ```json
//! {
//!   "overall": bool,
//!   "statements": [
//!     {
//!       "source": "...",
//!       "value": bool,
//!       "predicates": [
//!         {"name": "...", "args": "...", "value": bool,
//!          "true_ranges": [[s, e], ...], "note": "code: text" | null}
//!       ]
//!     }
//!   ],
//!   "meta": {...},
//!   "config": {...},
//!   "program": "..."
//! }
//! ```
//!
//! `overall` is the conjunction of the bare (non-binding) statement
//! verdicts; binding statements still appear with their own values.

use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::eval::Verdict;
use crate::jsonfmt::to_canonical_json;
use crate::motion::MotionChannels;
use crate::scene::Scene;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub overall: bool,
    pub statements: Vec<StatementReport>,
    pub meta: ReportMeta,
    pub config: Tolerances,
    pub program: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StatementReport {
    pub source: String,
    pub value: bool,
    pub predicates: Vec<PredicateReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PredicateReport {
    pub name: String,
    pub args: String,
    pub value: bool,
    pub true_ranges: Vec<(usize, usize)>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportMeta {
    pub fps: f64,
    pub num_frames: usize,
    pub objects: Vec<String>,
    pub engine_version: String,
}

/// Assemble a report from statement verdicts.
pub fn build_report(
    program_source: &str,
    scene: &Scene,
    channels: &MotionChannels,
    verdicts: &[Verdict],
    cfg: &Tolerances,
) -> Report {
    let overall = verdicts
        .iter()
        .filter(|v| v.binding.is_none())
        .all(|v| v.value);
    let statements = verdicts
        .iter()
        .map(|v| StatementReport {
            source: v.source.clone(),
            value: v.value,
            predicates: v
                .predicates
                .iter()
                .map(|p| PredicateReport {
                    name: p.name.clone(),
                    args: p.args.clone(),
                    value: p.value,
                    true_ranges: p.true_ranges.iter().map(|r| (r.start, r.end)).collect(),
                    note: p.note.as_ref().map(|n| n.render()),
                })
                .collect(),
        })
        .collect();
    Report {
        overall,
        statements,
        meta: ReportMeta {
            fps: channels.fps,
            num_frames: channels.num_frames,
            objects: scene.ids(),
            engine_version: crate::ENGINE_VERSION.to_string(),
        },
        config: cfg.clone(),
        program: program_source.to_string(),
    }
}

/// Canonical JSON bytes: byte-identical across runs on identical inputs.
pub fn to_json(report: &Report) -> Vec<u8> {
    to_canonical_json(report).expect("report serialization cannot fail")
}

/// Human-readable rendering: one ✓/✗ line per statement, indented
/// predicate lines with their true-frame ranges.
pub fn to_text(report: &Report) -> String {
    if report.statements.is_empty() {
        return "no statements\n".to_string();
    }
    let mut out = String::new();
    for stmt in &report.statements {
        let mark = if stmt.value { '\u{2713}' } else { '\u{2717}' };
        out.push(mark);
        out.push(' ');
        out.push_str(&stmt.source);
        out.push('\n');
        for pred in &stmt.predicates {
            out.push_str("    ");
            out.push_str(&pred.name);
            out.push_str(": ");
            out.push_str(if pred.value { "true" } else { "false" });
            if !pred.true_ranges.is_empty() {
                out.push_str(" on frames ");
                let ranges: Vec<String> = pred
                    .true_ranges
                    .iter()
                    .map(|(s, e)| {
                        if s == e {
                            format!("{s}")
                        } else {
                            format!("{s}-{e}")
                        }
                    })
                    .collect();
                out.push_str(&ranges.join(", "));
            }
            if let Some(note) = &pred.note {
                out.push_str(" \u{2014} ");
                out.push_str(note);
            }
            out.push('\n');
        }
    }
    out.push_str(&format!(
        "overall: {}\n",
        if report.overall { "true" } else { "false" }
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FrameInterval;
    use crate::eval::{Note, NoteCode, PredicateTrace};

    fn sample_channels() -> (Scene, MotionChannels) {
        let scene = Scene {
            objects: vec![crate::scene::ObjectInfo {
                id: "sq".into(),
                shape: crate::scene::ShapeClass::Square,
                color: crate::color::Rgb::new(0, 0, 0),
                color_name: Some("black".into()),
                bbox_local: crate::geom::Bbox::from_xywh(0.0, 0.0, 10.0, 10.0),
            }],
        };
        let trace = crate::trace::AnimationTrace {
            fps: 60.0,
            num_frames: 4,
            frames: vec![vec![crate::geom::Affine::IDENTITY; 4]],
        };
        let channels =
            crate::motion::build_channels(&scene, &trace, &Tolerances::default()).unwrap();
        (scene, channels)
    }

    fn sample_verdicts() -> Vec<Verdict> {
        vec![
            Verdict {
                source: "m_1 = iota(Motion, lambda m: type(m, \"translate\"))".into(),
                binding: Some("m_1".into()),
                value: false,
                predicates: vec![PredicateTrace {
                    name: "type".into(),
                    args: "m, \"translate\"".into(),
                    value: false,
                    true_ranges: vec![],
                    note: None,
                }],
            },
            Verdict {
                source: "t_while(m_1, m_2)".into(),
                binding: None,
                value: false,
                predicates: vec![PredicateTrace {
                    name: "t_while".into(),
                    args: "m_1, m_2".into(),
                    value: false,
                    true_ranges: vec![],
                    note: Some(Note::new(
                        NoteCode::NoValidRuns,
                        "operand m_1 has no valid runs",
                    )),
                }],
            },
        ]
    }

    #[test]
    fn json_carries_note_and_overall() {
        let (scene, channels) = sample_channels();
        let report = build_report("...", &scene, &channels, &sample_verdicts(), &Tolerances::default());
        assert!(!report.overall);
        let json = String::from_utf8(to_json(&report)).unwrap();
        assert!(json.contains(r#""note":"no_valid_runs: operand m_1 has no valid runs""#));
        assert!(json.starts_with(r#"{"overall":false,"statements":"#));
    }

    #[test]
    fn overall_ignores_binding_statements() {
        let (scene, channels) = sample_channels();
        let mut verdicts = sample_verdicts();
        verdicts[1].value = true;
        let report = build_report("...", &scene, &channels, &verdicts, &Tolerances::default());
        // The false verdict is a binding; the only bare statement is true.
        assert!(report.overall);
    }

    #[test]
    fn json_roundtrip_preserves_values_and_ranges() {
        let (scene, channels) = sample_channels();
        let mut verdicts = sample_verdicts();
        verdicts[0].predicates[0].true_ranges =
            vec![FrameInterval::new(2, 61), FrameInterval::new(80, 80)];
        verdicts[0].predicates[0].value = true;
        let report = build_report("src", &scene, &channels, &verdicts, &Tolerances::default());
        let parsed: Report = serde_json::from_slice(&to_json(&report)).unwrap();
        assert_eq!(parsed.statements[0].predicates[0].true_ranges, vec![(2, 61), (80, 80)]);
        assert_eq!(parsed.overall, report.overall);
        assert_eq!(parsed.statements[0].value, report.statements[0].value);
    }

    #[test]
    fn text_format_lines() {
        let (scene, channels) = sample_channels();
        let mut verdicts = sample_verdicts();
        verdicts[0].predicates[0].true_ranges = vec![FrameInterval::new(78, 82)];
        verdicts[0].predicates[0].value = true;
        let report = build_report("src", &scene, &channels, &verdicts, &Tolerances::default());
        let text = to_text(&report);
        assert!(text.contains("type: true on frames 78-82"));
        assert!(text.contains('\u{2717}'));
        assert!(text.ends_with("overall: false\n"));
    }

    #[test]
    fn empty_report_renders_placeholder() {
        let (scene, channels) = sample_channels();
        let report = build_report("", &scene, &channels, &[], &Tolerances::default());
        assert_eq!(to_text(&report), "no statements\n");
        assert!(report.overall);
    }
}
