use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ming_core::bundling::bundle;
use ming_core::export::report_json;
use ming_core::io::{load_data, load_points};
use ming_core::prelude::*;
use ming_core::render::render_bundled;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Output {
    SvgRetrieval,
    SvgRelevance,
    /// `retrieval.json` and `relevance.json`.
    Json,
    /// `report.json`.
    Report,
}

impl Output {
    pub const ALL: [Output; 4] = [Output::SvgRetrieval, Output::SvgRelevance, Output::Json, Output::Report];
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub data_input: PathBuf,
    pub embedding_input: PathBuf,
    pub data_format: InputFormat,
    pub kappa: usize,
    pub model: IndicatorPair,
    pub cap: f64,
    pub outputs: BTreeSet<Output>,
    pub bundle: Option<BundleConfig>,
    pub render: RenderSpec,
    pub scheme_override: Option<Scheme>,
    pub out_dir: PathBuf,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.kappa == 0 {
            return Err(CliError::Invalid("kappa must be at least 1".into()));
        }
        if !(self.cap.is_finite() && self.cap > 0.0) {
            return Err(CliError::Invalid(format!("cap must be positive, got {}", self.cap)));
        }
        if let (Ok(a), Ok(b)) = (
            fs::canonicalize(&self.data_input),
            fs::canonicalize(&self.embedding_input),
        ) {
            if a == b {
                return Err(CliError::Invalid(format!(
                    "--data and --embedding must be distinct files, both are {}",
                    self.data_input.display()
                )));
            }
        }
        let invalid = |e: ming_core::Error| CliError::Invalid(e.to_string());
        self.render.validate().map_err(invalid)?;
        if let Some(b) = &self.bundle {
            b.validate().map_err(invalid)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub n: usize,
    pub kappa: usize,
    pub model: IndicatorPair,
    pub global_false: f64,
    pub global_missed: f64,
    pub written: Vec<PathBuf>,
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "kappa={} model={} N={} F={:.3} M={:.3}",
            self.kappa,
            self.model.id(),
            self.n,
            self.global_false,
            self.global_missed
        )
    }
}

/// Reads both inputs, checks that they agree with each other and with κ,
/// and ranks both spaces.
pub fn load_analysis(
    data: &Path,
    embedding: &Path,
    format: InputFormat,
    kappa: usize,
) -> Result<Analysis, CliError> {
    let started = Instant::now();
    let source = load_data(data, format)?;
    let points = load_points(embedding, Space::Embedding)?;
    let n = source.len();
    if n != points.len() {
        return Err(CliError::Invalid(format!(
            "point counts differ: {} has {} points but {} has {}",
            data.display(),
            n,
            embedding.display(),
            points.len()
        )));
    }
    if kappa >= n {
        return Err(CliError::Invalid(format!(
            "kappa must be < N: got kappa={kappa} for N={n} points in {}",
            data.display()
        )));
    }
    if points.dim() > 2 {
        log::warn!(
            "{} has {} columns; only the first two are drawn",
            embedding.display(),
            points.dim()
        );
    }
    let analysis = Analysis::new(source, points)?;
    log::info!("ranked {n} points in {:.2?}", started.elapsed());
    Ok(analysis)
}

fn write(path: PathBuf, contents: &str, written: &mut Vec<PathBuf>) -> Result<(), CliError> {
    fs::write(&path, contents).map_err(|source| CliError::Write {
        path: path.clone(),
        source,
    })?;
    written.push(path);
    Ok(())
}

/// Runs the batch pipeline and writes the requested artefacts.
pub fn run(config: &RunConfig) -> Result<RunSummary, CliError> {
    config.validate()?;
    let analysis = load_analysis(
        &config.data_input,
        &config.embedding_input,
        config.data_format,
        config.kappa,
    )?;
    let snap = analysis.snapshot(config.model, config.kappa)?;
    fs::create_dir_all(&config.out_dir).map_err(|source| CliError::Write {
        path: config.out_dir.clone(),
        source,
    })?;
    let dir = &config.out_dir;
    let mut written = Vec::new();

    if config.outputs.contains(&Output::Report) {
        let mut text = report_json(&snap.report).map_err(ming_core::Error::from)?;
        text.push('\n');
        write(dir.join("report.json"), &text, &mut written)?;
    }
    for kind in [GraphKind::Retrieval, GraphKind::Relevance] {
        if config.outputs.contains(&Output::Json) {
            write(
                dir.join(format!("{}.json", kind.id())),
                &snap.graph_json(kind)?,
                &mut written,
            )?;
        }
        let wanted = match kind {
            GraphKind::Retrieval => Output::SvgRetrieval,
            GraphKind::Relevance => Output::SvgRelevance,
        };
        if !config.outputs.contains(&wanted) {
            continue;
        }
        let graph = snap.graph(kind);
        let scheme = config.scheme_override.unwrap_or(Scheme::for_kind(kind));
        let scale = ColourScale::new(scheme, config.cap)?;
        let svg = render_graph_with_report(graph, &scale, &config.render, &snap.report)?;
        write(dir.join(format!("{}.svg", kind.id())), &svg, &mut written)?;
        if let Some(bundle_config) = &config.bundle {
            let started = Instant::now();
            let bundled = bundle(graph, bundle_config, &scale)?;
            log::info!("bundled {} edges in {:.2?}", graph.edges.len(), started.elapsed());
            let svg = render_bundled(graph, &bundled.edges, &config.render, Some((&snap.report, &scale)))?;
            write(dir.join(format!("{}_bundled.svg", kind.id())), &svg, &mut written)?;
        }
    }
    Ok(RunSummary {
        n: analysis.len(),
        kappa: config.kappa,
        model: config.model,
        global_false: snap.report.global_false,
        global_missed: snap.report.global_missed,
        written,
    })
}
