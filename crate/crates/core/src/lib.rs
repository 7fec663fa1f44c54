//! Verification engine for the MoVer motion verification DSL.
//!
//! The engine checks whether a 2D motion graphics animation (a static scene
//! plus per-frame affine transforms for each object) satisfies a MoVer
//! program: a sequence of first-order-logic statements over objects and
//! their motions. The main pipeline is:
//!
//! 1. [`trace::load_inputs`] parses a trace JSON file (optionally merged
//!    with an SVG scene) into a [`scene::Scene`] and [`trace::AnimationTrace`].
//! 2. [`motion::build_channels`] factors every per-frame matrix into
//!    translation / rotation / scale channels and segments channel activity
//!    into motion runs.
//! 3. [`lang::parse`] + [`lang::resolve`] turn MoVer source text into a
//!    checked AST.
//! 4. [`eval::run_program`] executes the program against the motion
//!    channels, producing per-statement verdicts with predicate-level
//!    evidence.
//! 5. [`report::Report`] serializes the verdicts for humans (text) or
//!    machines (JSON), e.g. for an LLM correction loop driven by
//!    [`refine::refine`].
//!
//! The [`harness`] module is the engine's own oracle: it compiles
//! declarative animation specs into ground-truth programs and exact traces,
//! and perturbs them for targeted-failure testing.

pub mod algebra;
pub mod color;
pub mod config;
pub mod eval;
pub mod geom;
pub mod harness;
pub mod jsonfmt;
pub mod lang;
pub mod motion;
pub mod refine;
pub mod report;
pub mod scene;
pub mod svg;
pub mod trace;

pub use config::Tolerances;
pub use eval::{run_program, Verdict};
pub use motion::{build_channels, MotionChannels};
pub use report::Report;
pub use scene::Scene;
pub use trace::AnimationTrace;

/// Engine version string embedded in reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
