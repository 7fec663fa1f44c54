//! Iterative correction loop against a chat-completions endpoint.
//!
//! The model is asked to emit an animation spec (the harness JSON format);
//! each round the engine renders the spec, verifies it against a fixed
//! program, and feeds the report back until the verification passes or the
//! iteration cap is reached. The verification program never changes
//! between iterations; only the animation does.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::MaskRegistry;
use crate::config::Tolerances;
use crate::eval::run_program;
use crate::harness::{render_trace, SceneGraphSpec};
use crate::lang::{parse, resolve};
use crate::motion::build_channels;
use crate::report::{build_report, to_text, Report};

/// How much of the verification result goes back to the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FeedbackMode {
    /// The full predicate-level report.
    Full,
    /// Pass/fail only.
    Minimal,
    /// No verification feedback at all; the model simply retries.
    None,
}

impl FeedbackMode {
    pub fn from_name(s: &str) -> Option<FeedbackMode> {
        Some(match s {
            "full" => FeedbackMode::Full,
            "minimal" => FeedbackMode::Minimal,
            "none" => FeedbackMode::None,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

impl ChatMessage {
    pub fn new(role: &str, content: impl Into<String>) -> Self {
        ChatMessage {
            role: role.to_string(),
            content: content.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum RefineError {
    #[error("endpoint error: {0}")]
    Endpoint(String),
    #[error("endpoint returned HTTP {status}: {body}")]
    Status { status: u16, body: String },
    #[error("model output was not a valid spec after {attempts} consecutive attempts: {detail}")]
    MalformedModelOutput { attempts: usize, detail: String },
    #[error("iteration cap of {cap} reached without passing verification")]
    CapReached { cap: usize },
    #[error("program error: {0}")]
    Program(String),
    #[error("render error: {0}")]
    Render(String),
}

/// Anything that can answer a chat transcript with a completion.
pub trait ChatEndpoint {
    fn complete(&mut self, messages: &[ChatMessage]) -> Result<String, RefineError>;
}

/// HTTP client for the standard chat-completions wire format.
pub struct HttpEndpoint {
    pub url: String,
    pub model: String,
    /// Bearer token, typically sourced from the environment.
    pub token: Option<String>,
    agent: ureq::Agent,
}

impl HttpEndpoint {
    pub fn new(url: &str, model: &str, token: Option<String>) -> Self {
        HttpEndpoint {
            url: url.to_string(),
            model: model.to_string(),
            token,
            agent: ureq::Agent::new_with_defaults(),
        }
    }
}

impl ChatEndpoint for HttpEndpoint {
    fn complete(&mut self, messages: &[ChatMessage]) -> Result<String, RefineError> {
        let body = serde_json::json!({
            "model": self.model,
            "messages": messages,
        });
        let mut req = self
            .agent
            .post(&self.url)
            .header("content-type", "application/json");
        if let Some(token) = &self.token {
            req = req.header("authorization", format!("Bearer {token}"));
        }
        let mut res = req
            .send(body.to_string())
            .map_err(|e| match e {
                ureq::Error::StatusCode(code) => RefineError::Status {
                    status: code,
                    body: String::new(),
                },
                other => RefineError::Endpoint(other.to_string()),
            })?;
        let status = res.status().as_u16();
        let text = res
            .body_mut()
            .read_to_string()
            .map_err(|e| RefineError::Endpoint(e.to_string()))?;
        if !(200..300).contains(&status) {
            return Err(RefineError::Status { status, body: text });
        }
        let parsed: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| RefineError::Endpoint(e.to_string()))?;
        parsed["choices"][0]["message"]["content"]
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| {
                RefineError::Endpoint("response carries no choices[0].message.content".into())
            })
    }
}

/// One verification round: the spec the model emitted and its report.
#[derive(Clone, Debug)]
pub struct HistoryEntry {
    pub spec: SceneGraphSpec,
    pub report: Report,
}

pub struct RefineSession {
    pub prompt: String,
    pub program_source: String,
    pub max_iters: usize,
    pub feedback: FeedbackMode,
    pub cfg: Tolerances,
    pub history: Vec<HistoryEntry>,
    /// Consecutive malformed model replies tolerated before giving up.
    pub malformed_budget: usize,
}

impl RefineSession {
    pub fn new(prompt: &str, program_source: &str) -> Self {
        RefineSession {
            prompt: prompt.to_string(),
            program_source: program_source.to_string(),
            // Up to 50 correction iterations after the initial attempt.
            max_iters: 50,
            feedback: FeedbackMode::Full,
            cfg: Tolerances::default(),
            history: Vec::new(),
            malformed_budget: 3,
        }
    }
}

/// Engine-native reference documentation included in every session prompt.
pub const DSL_PREAMBLE: &str = r#"You write 2D animation specs as JSON with this shape:
{
  "name": str,
  "fps": 60.0,
  "objects": [{"id": str, "shape": "circle|square|rectangle|triangle|ellipse|path|letter", "color": css-color, "bbox": [x, y, w, h]}],
  "motions": [{
    "id": str, "agent": object-id, "type": "translate|rotate|scale",
    "direction": [dx, dy] (y-up logical; translate/scale sign pair) or "clockwise"/"counterclockwise",
    "magnitude": px (translate), degrees (rotate), or [rx, ry] ratios (scale),
    "origin": ["50%", "50%"] or [px, py] (rotate/scale only),
    "duration": seconds, "start": seconds, "easing": "linear"|"ease_in_out"
  }]
}
Start and end times must land on the fps frame grid. The verifier checks
the animation against a fixed program of predicates: shape/color/id over
objects; type/direction/magnitude/origin/post/duration/agent over motions;
t_before/t_while/t_after between motions; spatial relations
(s_top, s_bottom, s_left, s_right, s_border, s_intersect and the four
s_*_border contact forms) between objects. Reply with exactly one JSON
object and no other text."#;

fn strip_code_fence(content: &str) -> &str {
    let trimmed = content.trim();
    let Some(inner) = trimmed.strip_prefix("```") else {
        return trimmed;
    };
    let inner = inner.strip_prefix("json").unwrap_or(inner);
    inner.strip_suffix("```").unwrap_or(inner).trim()
}

/// Run the correction loop; returns the number of correction iterations
/// used on success (0 means the first animation verified).
pub fn refine(
    session: &mut RefineSession,
    endpoint: &mut dyn ChatEndpoint,
) -> Result<usize, RefineError> {
    let parsed = parse(&session.program_source)
        .map_err(|e| RefineError::Program(e.to_string()))?;
    let resolved = resolve(&parsed).map_err(|e| RefineError::Program(e.to_string()))?;

    let mut messages = vec![
        ChatMessage::new("system", DSL_PREAMBLE),
        ChatMessage::new(
            "user",
            format!(
                "Produce an animation spec for this request:\n{}\n\nIt must satisfy this verification program:\n{}",
                session.prompt, session.program_source
            ),
        ),
    ];

    for iteration in 0..=session.max_iters {
        // Malformed replies burn budget, not iterations.
        let mut malformed = 0usize;
        let (spec, raw) = loop {
            let raw = endpoint.complete(&messages)?;
            match SceneGraphSpec::from_json(strip_code_fence(&raw)) {
                Ok(spec) => break (spec, raw),
                Err(e) => {
                    malformed += 1;
                    if malformed >= session.malformed_budget {
                        return Err(RefineError::MalformedModelOutput {
                            attempts: malformed,
                            detail: e.to_string(),
                        });
                    }
                    messages.push(ChatMessage::new("assistant", raw));
                    messages.push(ChatMessage::new(
                        "user",
                        "That was not a valid spec JSON object. Reply with exactly one JSON object.",
                    ));
                }
            }
        };

        let (scene, trace) =
            render_trace(&spec, None).map_err(|e| RefineError::Render(e.to_string()))?;
        let channels = build_channels(&scene, &trace, &session.cfg)
            .map_err(|e| RefineError::Render(e.to_string()))?;
        let masks = MaskRegistry::defaults();
        let verdicts = run_program(&resolved, &scene, &channels, &session.cfg, &masks)
            .map_err(|e| RefineError::Program(e.to_string()))?;
        let report = build_report(
            &session.program_source,
            &scene,
            &channels,
            &verdicts,
            &session.cfg,
        );
        let passed = report.overall;
        session.history.push(HistoryEntry { spec, report });

        if passed {
            return Ok(iteration);
        }
        if iteration == session.max_iters {
            return Err(RefineError::CapReached {
                cap: session.max_iters,
            });
        }

        messages.push(ChatMessage::new("assistant", raw));
        let feedback = match session.feedback {
            FeedbackMode::Full => format!(
                "The animation failed verification. Report:\n{}\nCorrect the animation spec. The verification program is unchanged.",
                to_text(&session.history.last().expect("just pushed").report)
            ),
            FeedbackMode::Minimal => {
                "The animation failed verification. Correct the animation spec.".to_string()
            }
            FeedbackMode::None => "Produce another animation spec for the same request.".to_string(),
        };
        messages.push(ChatMessage::new("user", feedback));
    }
    unreachable!("loop returns on pass or cap");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{compile_program, default_suite};

    /// Scripted endpoint: replays canned replies and records transcripts.
    pub struct ScriptedEndpoint {
        pub replies: Vec<String>,
        pub calls: usize,
        pub transcripts: Vec<Vec<ChatMessage>>,
    }

    impl ScriptedEndpoint {
        pub fn new(replies: Vec<String>) -> Self {
            ScriptedEndpoint {
                replies,
                calls: 0,
                transcripts: Vec::new(),
            }
        }
    }

    impl ChatEndpoint for ScriptedEndpoint {
        fn complete(&mut self, messages: &[ChatMessage]) -> Result<String, RefineError> {
            self.transcripts.push(messages.to_vec());
            let reply = self
                .replies
                .get(self.calls)
                .cloned()
                .unwrap_or_else(|| self.replies.last().cloned().unwrap_or_default());
            self.calls += 1;
            Ok(reply)
        }
    }

    fn good_spec_json() -> String {
        let spec = &default_suite(7)[0];
        String::from_utf8(spec.to_json()).unwrap()
    }

    fn wrong_spec_json() -> String {
        let mut spec = default_suite(7)[0].clone();
        // Far too short a displacement: the magnitude check fails.
        if let Some(m) = spec.motions.first_mut() {
            m.magnitude = Some(crate::harness::MagnitudeSpec::Scalar(10.0));
        }
        String::from_utf8(spec.to_json()).unwrap()
    }

    fn program_for_suite_spec() -> String {
        compile_program(&default_suite(7)[0]).unwrap().text
    }

    #[test]
    fn pass_at_zero_has_history_one() {
        let mut session = RefineSession::new("translate the square up", &program_for_suite_spec());
        let mut endpoint = ScriptedEndpoint::new(vec![good_spec_json()]);
        let iterations = refine(&mut session, &mut endpoint).unwrap();
        assert_eq!(iterations, 0);
        assert_eq!(session.history.len(), 1);
        assert!(session.history[0].report.overall);
    }

    #[test]
    fn wrong_then_correct_uses_one_iteration() {
        let mut session = RefineSession::new("translate the square up", &program_for_suite_spec());
        let mut endpoint = ScriptedEndpoint::new(vec![wrong_spec_json(), good_spec_json()]);
        let iterations = refine(&mut session, &mut endpoint).unwrap();
        assert_eq!(iterations, 1);
        assert_eq!(session.history.len(), 2);
        assert!(!session.history[0].report.overall);
        assert!(session.history[1].report.overall);
    }

    #[test]
    fn cap_exhaustion_has_history_cap_plus_one() {
        let mut session = RefineSession::new("translate the square up", &program_for_suite_spec());
        session.max_iters = 3;
        let mut endpoint = ScriptedEndpoint::new(vec![wrong_spec_json()]);
        let err = refine(&mut session, &mut endpoint).unwrap_err();
        assert!(matches!(err, RefineError::CapReached { cap: 3 }));
        assert_eq!(session.history.len(), 4);
    }

    #[test]
    fn garbage_thrice_is_malformed_output() {
        let mut session = RefineSession::new("translate the square up", &program_for_suite_spec());
        let mut endpoint = ScriptedEndpoint::new(vec!["not json".to_string()]);
        let err = refine(&mut session, &mut endpoint).unwrap_err();
        assert!(matches!(
            err,
            RefineError::MalformedModelOutput { attempts: 3, .. }
        ));
        assert!(session.history.is_empty());
    }

    #[test]
    fn program_is_never_mutated_between_iterations() {
        let program = program_for_suite_spec();
        let mut session = RefineSession::new("translate the square up", &program);
        session.max_iters = 2;
        let mut endpoint = ScriptedEndpoint::new(vec![wrong_spec_json()]);
        let _ = refine(&mut session, &mut endpoint);
        assert_eq!(session.program_source, program);
        // Every request carries the identical program text.
        for transcript in &endpoint.transcripts {
            assert!(transcript[1].content.contains(&program));
        }
    }

    #[test]
    fn code_fences_are_stripped() {
        assert_eq!(strip_code_fence("```json\n{\"a\":1}\n```"), "{\"a\":1}");
        assert_eq!(strip_code_fence("{\"a\":1}"), "{\"a\":1}");
    }
}
