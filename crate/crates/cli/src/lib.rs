//! Command-line pipeline: read a data set and its embedding, score the
//! κ-neighbourhoods, and write JSON reports and SVG drawings, or serve them
//! to a browser.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ming_core::prelude::*;

pub mod pipeline;
pub mod server;

pub use pipeline::{load_analysis, run, Output, RunConfig, RunSummary};
pub use server::{router, ServeConfig, ServeState};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Inputs that are readable but violate a constraint.
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] ming_core::Error),
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot listen on {addr}: {source}")]
    Bind {
        addr: String,
        source: std::io::Error,
    },
    #[error("server failed: {0}")]
    Server(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ming", version, about = "Neighbourhood-graph diagnostics for 2D embeddings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write report.json, retrieval.json and relevance.json.
    Compute {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
    },
    /// Write the JSON outputs plus retrieval.svg and relevance.svg.
    Render {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        #[command(flatten)]
        render: RenderArgs,
        #[command(flatten)]
        bundle: BundleArgs,
    },
    /// Serve graph JSON for any κ over local HTTP.
    Serve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 7878)]
        port: u16,
        /// Directory of static viewer assets served at `/`.
        #[arg(long)]
        viewer_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Pr,
    Tc,
}

impl From<ModelArg> for IndicatorPair {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Pr => IndicatorPair::PrecisionRecall,
            ModelArg::Tc => IndicatorPair::TrustworthinessContinuity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Auto,
    Points,
    Distances,
}

impl From<FormatArg> for InputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Auto => InputFormat::Auto,
            FormatArg::Points => InputFormat::Points,
            FormatArg::Distances => InputFormat::Distances,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Gnbu,
    Orrd,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Gnbu => Scheme::GnBu,
            SchemeArg::Orrd => Scheme::OrRd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackgroundArg {
    Circle,
    None,
}

impl From<BackgroundArg> for Background {
    fn from(b: BackgroundArg) -> Self {
        match b {
            BackgroundArg::Circle => Background::Circle,
            BackgroundArg::None => Background::None,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Data-space coordinates, or a square distance matrix.
    #[arg(long)]
    pub data: PathBuf,
    /// Embedding coordinates, one row per data point.
    #[arg(long)]
    pub embedding: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    pub data_format: FormatArg,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    pub kappa: u32,
    #[arg(long, value_enum, default_value_t = ModelArg::Tc)]
    pub model: ModelArg,
    /// Colour saturation penalty [default: 20 for tc, 1 for pr].
    #[arg(long)]
    pub cap: Option<f64>,
}

impl InputArgs {
    pub fn cap(&self) -> f64 {
        self.cap.unwrap_or_else(|| default_cap(self.model.into()))
    }
}

pub fn default_cap(model: IndicatorPair) -> f64 {
    match model {
        IndicatorPair::PrecisionRecall => 1.0,
        IndicatorPair::TrustworthinessContinuity => 20.0,
    }
}

fn parse_dash(text: &str) -> Result<(f64, f64), String> {
    let (on, off) = text
        .split_once(',')
        .ok_or_else(|| format!("expected ON,OFF lengths, got {text:?}"))?;
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
    Ok((parse(on)?, parse(off)?))
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    /// Use one colour scheme for both graphs.
    #[arg(long, value_enum)]
    pub scheme_override: Option<SchemeArg>,
    /// On/off lengths of dashed halves.
    #[arg(long, default_value = "3,2", value_parser = parse_dash)]
    pub dash: (f64, f64),
    #[arg(long, default_value_t = 800)]
    pub canvas: u32,
    #[arg(long, value_enum, default_value_t = BackgroundArg::Circle)]
    pub background: BackgroundArg,
    /// Draw point labels next to markers.
    #[arg(long)]
    pub labels: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BundleArgs {
    /// Also write retrieval_bundled.svg and relevance_bundled.svg.
    #[arg(long)]
    pub bundle: bool,
    /// Inclusive upper bounds of the penalty bins.
    #[arg(long, default_value = "0,10,20")]
    pub bundle_bins: String,
    #[arg(long, default_value_t = 10)]
    pub bundle_iters: usize,
    #[arg(long, default_value_t = 512)]
    pub bundle_resolution: usize,
}

impl BundleArgs {
    fn config(&self) -> Result<Option<BundleConfig>, CliError> {
        if !self.bundle {
            return Ok(None);
        }
        Ok(Some(BundleConfig {
            bins: PenaltyBins::parse(&self.bundle_bins).map_err(|e| CliError::Invalid(e.to_string()))?,
            iterations: self.bundle_iters,
            grid_resolution: self.bundle_resolution,
            ..BundleConfig::default()
        }))
    }
}

fn run_config(input: &InputArgs, out_dir: PathBuf, outputs: &[Output]) -> RunConfig {
    RunConfig {
        data_input: input.data.clone(),
        embedding_input: input.embedding.clone(),
        data_format: input.data_format.into(),
        kappa: input.kappa as usize,
        model: input.model.into(),
        cap: input.cap(),
        outputs: outputs.iter().copied().collect(),
        bundle: None,
        render: RenderSpec::default(),
        scheme_override: None,
        out_dir,
    }
}

/// Runs one parsed command line.
pub fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute { input, out_dir } => {
            let config = run_config(&input, out_dir, &[Output::Json, Output::Report]);
            println!("{}", run(&config)?);
        }
        Command::Render {
            input,
            out_dir,
            render,
            bundle,
        } => {
            let mut config = run_config(&input, out_dir, &Output::ALL);
            config.bundle = bundle.config()?;
            config.scheme_override = render.scheme_override.map(Scheme::from);
            config.render = RenderSpec {
                dash_pattern: render.dash,
                background: render.background.into(),
                canvas_size: render.canvas,
                show_labels: render.labels,
                ..RenderSpec::default()
            };
            println!("{}", run(&config)?);
        }
        Command::Serve {
            input,
            port,
            viewer_dir,
        } => {
            let config = ServeConfig {
                data_input: input.data.clone(),
                embedding_input: input.embedding.clone(),
                data_format: input.data_format.into(),
                kappa: input.kappa as usize,
                model: input.model.into(),
                cap: input.cap(),
                port,
                viewer_dir,
            };
            server::serve(&config)?;
        }
    }
    Ok(())
}
