//! `mover` — verify 2D motion-graphics animations against MoVer programs.
//!
//! Exit codes: 0 verification passed (or command succeeded), 1
//! verification failed, 2 usage or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use mover_core::algebra::{rect_relation, MaskRegistry};
use mover_core::config::{load_tolerances, Tolerances};
use mover_core::eval::run_program;
use mover_core::harness::{compile_program, default_suite, render_trace, SceneGraphSpec};
use mover_core::lang::{parse, resolve};
use mover_core::motion::build_channels;
use mover_core::refine::{refine, FeedbackMode, HttpEndpoint, RefineError, RefineSession};
use mover_core::report::{build_report, to_json, to_text};
use mover_core::trace::{load_inputs, write_trace_json};

#[derive(Parser)]
#[command(name = "mover", version, about = "Motion verification engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify an animation trace against a program.
    Verify(VerifyArgs),
    /// Parse and sort-check a program without running it.
    Check {
        /// Program file (.mover).
        program: PathBuf,
    },
    /// Generate ground-truth program/trace pairs from specs.
    Gen(GenArgs),
    /// Print raw interval/rectangle relations between two objects.
    Relations(RelationsArgs),
    /// Drive an LLM endpoint to synthesize and correct an animation.
    Refine(RefineArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Trace JSON file.
    #[arg(long)]
    trace: PathBuf,
    /// Optional SVG scene supplying object appearance.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// MoVer program file.
    #[arg(long)]
    program: PathBuf,
    /// Tolerance config (.toml or .json).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Relation mask overrides (.json).
    #[arg(long)]
    masks: Option<PathBuf>,
    /// Report format.
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Animation spec JSON file.
    #[arg(long, conflicts_with = "suite")]
    spec: Option<PathBuf>,
    /// Emit a named built-in suite ("default").
    #[arg(long)]
    suite: Option<String>,
    /// Output directory.
    #[arg(long)]
    out_dir: PathBuf,
    /// Suite generation seed.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Frames per second override.
    #[arg(long)]
    fps: Option<f64>,
}

#[derive(Args)]
struct RelationsArgs {
    /// Trace JSON file.
    #[arg(long)]
    trace: PathBuf,
    /// Optional SVG scene.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Two object ids, comma separated.
    #[arg(long)]
    objects: String,
    /// Print a single frame instead of all frames.
    #[arg(long)]
    frame: Option<usize>,
    /// Tolerance config (.toml or .json).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct RefineArgs {
    /// Text prompt file.
    #[arg(long)]
    prompt: PathBuf,
    /// MoVer program file.
    #[arg(long)]
    program: PathBuf,
    /// Chat-completions endpoint URL.
    #[arg(long)]
    endpoint: String,
    /// Model name.
    #[arg(long, default_value = "gpt-4o")]
    model: String,
    /// Maximum correction iterations.
    #[arg(long, default_value_t = 50)]
    max_iters: usize,
    /// Feedback sent back per failed iteration.
    #[arg(long, default_value = "full", value_parser = ["full", "minimal", "none"])]
    feedback: String,
    /// Tolerance config (.toml or .json).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for the final spec/trace/report.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Check { program } => cmd_check(&program),
        Command::Gen(args) => cmd_gen(args),
        Command::Relations(args) => cmd_relations(args),
        Command::Refine(args) => cmd_refine(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<Tolerances> {
    match path {
        Some(p) => Ok(load_tolerances(p)?),
        None => Ok(Tolerances::default()),
    }
}

fn load_masks(path: &Option<PathBuf>) -> Result<MaskRegistry> {
    match path {
        Some(p) => Ok(MaskRegistry::load_file(p)?),
        None => Ok(MaskRegistry::defaults()),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let cfg = load_config(&args.config)?;
    let masks = load_masks(&args.masks)?;
    let (scene, trace) = load_inputs(&args.trace, args.svg.as_deref())?;
    let channels = build_channels(&scene, &trace, &cfg)?;
    for warning in &channels.warnings {
        eprintln!("warning: {warning}");
    }

    let source = std::fs::read_to_string(&args.program)
        .with_context(|| format!("cannot read program {}", args.program.display()))?;
    let resolved = resolve(&parse(&source)?)?;
    for warning in &resolved.warnings {
        eprintln!("warning: {warning}");
    }

    let verdicts = run_program(&resolved, &scene, &channels, &cfg, &masks)?;
    let report = build_report(&source, &scene, &channels, &verdicts, &cfg);

    let bytes = match args.format.as_str() {
        "json" => to_json(&report),
        _ => to_text(&report).into_bytes(),
    };
    match &args.output {
        Some(path) => std::fs::write(path, &bytes)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(&bytes)?,
    }

    Ok(if report.overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_check(program: &Path) -> Result<ExitCode> {
    let source = std::fs::read_to_string(program)
        .with_context(|| format!("cannot read program {}", program.display()))?;
    let resolved = resolve(&parse(&source)?)?;
    for warning in &resolved.warnings {
        eprintln!("warning: {warning}");
    }
    println!(
        "ok: {} statement(s), {} binding(s)",
        resolved.program.statements.len(),
        resolved.binding_sorts.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn write_pair(dir: &Path, spec: &SceneGraphSpec, fps: Option<f64>) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let compiled = compile_program(spec)?;
    let (scene, trace) = render_trace(spec, fps)?;
    std::fs::write(dir.join("spec.json"), spec.to_json())?;
    std::fs::write(dir.join("prog.mover"), compiled.text.as_bytes())?;
    std::fs::write(dir.join("trace.json"), write_trace_json(&scene, &trace))?;
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode> {
    match (&args.spec, &args.suite) {
        (Some(spec_path), None) => {
            let text = std::fs::read_to_string(spec_path)
                .with_context(|| format!("cannot read spec {}", spec_path.display()))?;
            let spec = SceneGraphSpec::from_json(&text)?;
            write_pair(&args.out_dir, &spec, args.fps)?;
            println!("wrote {}", args.out_dir.display());
        }
        (None, Some(name)) => {
            if name != "default" {
                return Err(anyhow!("unknown suite {name:?}; available: default"));
            }
            let specs = default_suite(args.seed);
            for spec in &specs {
                write_pair(&args.out_dir.join(&spec.name), spec, args.fps)?;
            }
            println!("wrote {} spec(s) under {}", specs.len(), args.out_dir.display());
        }
        _ => return Err(anyhow!("exactly one of --spec or --suite is required")),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_relations(args: RelationsArgs) -> Result<ExitCode> {
    let cfg = load_config(&args.config)?;
    let (scene, trace) = load_inputs(&args.trace, args.svg.as_deref())?;
    let channels = build_channels(&scene, &trace, &cfg)?;

    let (a_id, b_id) = args
        .objects
        .split_once(',')
        .ok_or_else(|| anyhow!("--objects expects two comma-separated ids"))?;
    let a = scene
        .index_of(a_id.trim())
        .ok_or_else(|| anyhow!("unknown object id {a_id:?}"))?;
    let b = scene
        .index_of(b_id.trim())
        .ok_or_else(|| anyhow!("unknown object id {b_id:?}"))?;

    let frames: Vec<usize> = match args.frame {
        Some(f) => {
            if f == 0 || f > trace.num_frames {
                return Err(anyhow!(
                    "frame {f} outside 1..={}",
                    trace.num_frames
                ));
            }
            vec![f]
        }
        None => (1..=trace.num_frames).collect(),
    };

    println!("frame\tx_rel\ty_rel");
    for f in frames {
        let rel = rect_relation(
            channels.bbox_world(a, f),
            channels.bbox_world(b, f),
            cfg.tau_space,
        );
        println!("{f}\t{}\t{}", rel.x, rel.y);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_refine(args: RefineArgs) -> Result<ExitCode> {
    let prompt = std::fs::read_to_string(&args.prompt)
        .with_context(|| format!("cannot read prompt {}", args.prompt.display()))?;
    let program = std::fs::read_to_string(&args.program)
        .with_context(|| format!("cannot read program {}", args.program.display()))?;

    let mut session = RefineSession::new(&prompt, &program);
    session.max_iters = args.max_iters;
    session.feedback =
        FeedbackMode::from_name(&args.feedback).expect("clap restricts the value set");
    session.cfg = load_config(&args.config)?;

    let token = std::env::var("MOVER_API_TOKEN").ok();
    let mut endpoint = HttpEndpoint::new(&args.endpoint, &args.model, token);

    let outcome = refine(&mut session, &mut endpoint);
    if let Some(dir) = &args.out_dir {
        if let Some(last) = session.history.last() {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join("final_spec.json"), last.spec.to_json())?;
            std::fs::write(dir.join("final_report.json"), to_json(&last.report))?;
        }
    }
    match outcome {
        Ok(iterations) => {
            println!(
                "passed after {iterations} correction iteration(s); {} round(s) total",
                session.history.len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(RefineError::CapReached { cap }) => {
            println!(
                "failed: iteration cap {cap} reached; {} round(s) recorded",
                session.history.len()
            );
            Ok(ExitCode::from(1))
        }
        Err(other) => Err(other.into()),
    }
}
