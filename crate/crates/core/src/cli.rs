//! Command-line front end. Exit codes: 0 success, 1 data or I/O error,
//! 2 invalid input, 3 unknown phoneme.

use std::fs;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::data::{DataError, Model};
use crate::params::{validate, ControlState};
use crate::sequencer::{from_phoneme_string, sample_frames, SequenceError, Timing};
use crate::service::{self, ServeConfig, DEFAULT_BIND};
use crate::solver::{solve, ArticulatorFrame};
use crate::views::{render_view, scene_to_svg, scenes_to_animated_svg, ViewKind, DEFAULT_SIZE};

/// Errors printed when validate-data fails.
pub const MAX_REPORTED_ERRORS: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "tractus", version, about = "Two-dimensional articulatory model")]
pub struct Cli {
    /// Directory holding contours.json and phonemes.json [default: bundled data]
    #[arg(long, global = true, env = "TRACTUS_DATA")]
    pub data: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render one view of a phoneme preset or a control-state file as SVG
    Render(RenderArgs),
    /// Animate a SAMPA string as frame data (JSON) or animated SVG
    Animate(AnimateArgs),
    /// Load the data files and report schema errors
    ValidateData,
    /// Run the HTTP service
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["phoneme", "state"]))]
pub struct RenderArgs {
    #[arg(long)]
    pub phoneme: Option<String>,
    /// JSON control-state document
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ViewArg::Composite)]
    pub view: ViewArg,
    /// Second phoneme drawn dashed over the sagittal view
    #[arg(long)]
    pub overlay: Option<String>,
    /// Output file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Pixel size of each panel
    #[arg(long, default_value_t = DEFAULT_SIZE)]
    pub size: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ViewArg {
    Sagittal,
    Glottal,
    Palatal,
    Composite,
}

impl From<ViewArg> for ViewKind {
    fn from(v: ViewArg) -> ViewKind {
        match v {
            ViewArg::Sagittal => ViewKind::Sagittal,
            ViewArg::Glottal => ViewKind::Glottal,
            ViewArg::Palatal => ViewKind::Palatal,
            ViewArg::Composite => ViewKind::Composite,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AnimateFormat {
    Json,
    Svg,
}

#[derive(Debug, Args)]
pub struct AnimateArgs {
    #[arg(long)]
    pub sampa: String,
    #[arg(long, default_value_t = 25.0)]
    pub fps: f64,
    #[arg(long, default_value_t = Timing::default().segment_duration)]
    pub segment_duration: f64,
    #[arg(long, default_value_t = Timing::default().transition_fraction)]
    pub transition_fraction: f64,
    /// Output format [default: svg for a .svg output file, json otherwise]
    #[arg(long, value_enum)]
    pub format: Option<AnimateFormat>,
    /// View used for animated SVG
    #[arg(long, value_enum, default_value_t = ViewArg::Composite)]
    pub view: ViewArg,
    #[arg(long, default_value_t = DEFAULT_SIZE)]
    pub size: u32,
    /// Output file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "TRACTUS_BIND", default_value = DEFAULT_BIND)]
    pub bind: SocketAddr,
    /// Directory of the static UI bundle
    #[arg(long, env = "TRACTUS_UI")]
    pub ui: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
    #[error("unknown phoneme {0:?}")]
    UnknownPhoneme(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Data(_) | CliError::Io(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::UnknownPhoneme(_) => 3,
        }
    }
}

impl From<SequenceError> for CliError {
    fn from(e: SequenceError) -> CliError {
        match e {
            SequenceError::UnknownPhoneme(s) => CliError::UnknownPhoneme(s),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn load(data: Option<&Path>) -> Result<Model, CliError> {
    Ok(service::load_model(data)?)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn preset_frame(model: &Model, sampa: &str) -> Result<ArticulatorFrame, CliError> {
    let entry = model.inventory.lookup(sampa).map_err(|e| CliError::UnknownPhoneme(e.0))?;
    solve(&model.library, &entry.state).map_err(|e| CliError::Invalid(e.to_string()))
}

fn read_state(path: &Path) -> Result<ControlState, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let value = serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    validate(&value).map_err(|errors| {
        let lines: Vec<String> = errors.0.iter().map(|e| format!("  {}: {e}", e.field())).collect();
        CliError::Invalid(format!("{}: invalid control state\n{}", path.display(), lines.join("\n")))
    })
}

fn check_size(size: u32) -> Result<u32, CliError> {
    if size == 0 || size > service::MAX_SIZE {
        return Err(CliError::Invalid(format!("--size must lie in 1..={}", service::MAX_SIZE)));
    }
    Ok(size)
}

pub fn render(data: Option<&Path>, args: &RenderArgs) -> Result<(), CliError> {
    let size = check_size(args.size)?;
    let model = load(data)?;
    let frame = match (&args.phoneme, &args.state) {
        (Some(sampa), _) => preset_frame(&model, sampa)?,
        (None, Some(path)) => {
            let state = read_state(path)?;
            solve(&model.library, &state).map_err(|e| CliError::Invalid(e.to_string()))?
        }
        (None, None) => return Err(CliError::Invalid("one of --phoneme or --state is required".into())),
    };
    let overlay = args.overlay.as_deref().map(|s| preset_frame(&model, s)).transpose()?;
    let scene = render_view(&model.library, &frame, args.view.into(), overlay.as_ref());
    write_output(args.out.as_deref(), &scene_to_svg(&scene, size))
}

pub fn animate(data: Option<&Path>, args: &AnimateArgs) -> Result<usize, CliError> {
    let size = check_size(args.size)?;
    if !(args.fps > 0.0 && args.fps <= service::MAX_FPS) {
        return Err(CliError::Invalid(format!("--fps must lie in (0, {}]", service::MAX_FPS)));
    }
    let model = load(data)?;
    let timing = Timing {
        segment_duration: args.segment_duration,
        transition_fraction: args.transition_fraction,
        ..Timing::default()
    };
    let timeline = from_phoneme_string(&model.inventory, &args.sampa, timing)?;
    let frames = sample_frames(&model.library, &timeline, args.fps)?;
    let by_extension = args.out.as_deref().and_then(|p| p.extension()).is_some_and(|e| e.eq_ignore_ascii_case("svg"));
    let format = args.format.unwrap_or(if by_extension { AnimateFormat::Svg } else { AnimateFormat::Json });
    let text = match format {
        AnimateFormat::Json => {
            let doc = serde_json::json!({ "sampa": args.sampa, "fps": args.fps, "frames": frames });
            serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))? + "\n"
        }
        AnimateFormat::Svg => {
            let scenes: Vec<_> =
                frames.iter().map(|f| render_view(&model.library, &f.frame, args.view.into(), None)).collect();
            scenes_to_animated_svg(&scenes, size, args.fps)
        }
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(frames.len())
}

/// Returns the error lines to print; empty when the data loads cleanly.
pub fn validate_data(data: Option<&Path>) -> Vec<String> {
    match load(data) {
        Ok(_) => Vec::new(),
        Err(CliError::Data(e)) => {
            let (file, lines): (&str, Vec<String>) = match &e {
                DataError::Library(errs) => {
                    (crate::data::CONTOURS_FILE, errs.0.iter().map(|e| e.to_string()).collect())
                }
                DataError::Inventory(errs) => {
                    (crate::data::PHONEMES_FILE, errs.0.iter().map(|e| e.to_string()).collect())
                }
            };
            let total = lines.len();
            let mut out: Vec<String> =
                lines.into_iter().take(MAX_REPORTED_ERRORS).map(|l| format!("{file}: {l}")).collect();
            if total > MAX_REPORTED_ERRORS {
                out.push(format!("... and {} more", total - MAX_REPORTED_ERRORS));
            }
            out
        }
        Err(other) => vec![other.to_string()],
    }
}

fn run_serve(data: Option<PathBuf>, args: &ServeArgs) -> Result<(), CliError> {
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Io(e.to_string()))?;
    let config = ServeConfig { bind: args.bind, data_dir: data, ui_dir: args.ui.clone() };
    runtime.block_on(service::serve(config)).map_err(|e| match e {
        service::ServeError::Io(e) => CliError::Io(e.to_string()),
        service::ServeError::Data(e) => CliError::Data(e),
    })
}

pub fn run(cli: Cli) -> ExitCode {
    let data = cli.data.as_deref();
    let result = match &cli.command {
        Command::Render(args) => render(data, args),
        Command::Animate(args) => animate(data, args).map(|n| {
            if args.out.is_some() {
                eprintln!("{n} frames");
            }
        }),
        Command::ValidateData => {
            let errors = validate_data(data);
            if errors.is_empty() {
                println!("data ok");
                return ExitCode::SUCCESS;
            }
            for line in &errors {
                eprintln!("{line}");
            }
            return ExitCode::from(1);
        }
        Command::Serve(args) => run_serve(cli.data.clone(), args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
