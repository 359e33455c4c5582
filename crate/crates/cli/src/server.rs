//! Local HTTP server: ranks are computed once at start-up, graphs are rebuilt
//! per request for whatever κ the viewer asks for.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::{Query, State};
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use ming_core::export::{report_json, SCHEMA_VERSION};
use ming_core::prelude::*;
use serde_json::json;
use tower_http::services::ServeDir;

use crate::{load_analysis, CliError};

#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub data_input: PathBuf,
    pub embedding_input: PathBuf,
    pub data_format: InputFormat,
    pub kappa: usize,
    pub model: IndicatorPair,
    pub cap: f64,
    pub port: u16,
    pub viewer_dir: Option<PathBuf>,
}

/// Read-only state shared by all requests.
#[derive(Debug)]
pub struct ServeState {
    pub analysis: Analysis,
    pub kappa: usize,
    pub model: IndicatorPair,
    pub cap: f64,
}

type Shared = Arc<ServeState>;

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    (status, axum::Json(json!({ "error": message.into() }))).into_response()
}

fn json_body(body: String) -> Response {
    ([(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn parse_model(state: &ServeState, q: &HashMap<String, String>) -> Result<IndicatorPair, String> {
    match q.get("model") {
        None => Ok(state.model),
        Some(id) => IndicatorPair::from_id(id)
            .ok_or_else(|| format!("unknown model {id:?}; expected \"pr\" or \"tc\"")),
    }
}

fn parse_kappa(state: &ServeState, q: &HashMap<String, String>) -> Result<usize, String> {
    let n = state.analysis.len();
    let kappa = match q.get("kappa") {
        None => state.kappa,
        Some(text) => text
            .parse::<usize>()
            .map_err(|_| format!("kappa must be an integer, got {text:?}"))?,
    };
    if kappa == 0 || kappa >= n {
        return Err(format!("kappa must be in 1..={} for N={n}, got {kappa}", n - 1));
    }
    Ok(kappa)
}

fn parse_scale(state: &ServeState, q: &HashMap<String, String>) -> Result<(IndicatorPair, usize), String> {
    Ok((parse_model(state, q)?, parse_kappa(state, q)?))
}

async fn compute<T: Send + 'static>(
    job: impl FnOnce() -> ming_core::Result<T> + Send + 'static,
) -> Result<T, Response> {
    match tokio::task::spawn_blocking(job).await {
        Ok(Ok(value)) => Ok(value),
        Ok(Err(e)) => Err(error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())),
        Err(e) => Err(error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())),
    }
}

async fn graph(State(state): State<Shared>, Query(q): Query<HashMap<String, String>>) -> Response {
    let kind = match q.get("kind").map(String::as_str) {
        None => GraphKind::Retrieval,
        Some(id) => match GraphKind::from_id(id) {
            Some(kind) => kind,
            None => return error(StatusCode::NOT_FOUND, format!("unknown graph kind {id:?}")),
        },
    };
    let (model, kappa) = match parse_scale(&state, &q) {
        Ok(scale) => scale,
        Err(msg) => return error(StatusCode::BAD_REQUEST, msg),
    };
    match compute(move || state.analysis.graph_json(kind, model, kappa)).await {
        Ok(body) => json_body(body),
        Err(e) => e,
    }
}

async fn report(State(state): State<Shared>, Query(q): Query<HashMap<String, String>>) -> Response {
    let (model, kappa) = match parse_scale(&state, &q) {
        Ok(scale) => scale,
        Err(msg) => return error(StatusCode::BAD_REQUEST, msg),
    };
    let job = move || {
        let r = state.analysis.report(model, kappa)?;
        Ok(report_json(&r)? + "\n")
    };
    match compute(job).await {
        Ok(body) => json_body(body),
        Err(e) => e,
    }
}

async fn info(State(state): State<Shared>) -> Response {
    let anchors = |s: Scheme| s.anchors().iter().map(ToString::to_string).collect::<Vec<_>>();
    let n = state.analysis.len();
    axum::Json(json!({
        "n": n,
        "kappa_min": 1,
        "kappa_max": n - 1,
        "kappa": state.kappa,
        "model": state.model.id(),
        "models": IndicatorPair::ALL.iter().map(|p| p.id()).collect::<Vec<_>>(),
        "kinds": [GraphKind::Retrieval.id(), GraphKind::Relevance.id()],
        "cap": state.cap,
        "schemes": {
            GraphKind::Retrieval.id(): { "id": Scheme::GnBu.id(), "anchors": anchors(Scheme::GnBu) },
            GraphKind::Relevance.id(): { "id": Scheme::OrRd.id(), "anchors": anchors(Scheme::OrRd) },
        },
        "schema_version": SCHEMA_VERSION,
    }))
    .into_response()
}

const INDEX: &str = "<!DOCTYPE html>
<html><head><meta charset=\"utf-8\"><title>ming</title></head>
<body>
<h1>ming</h1>
<ul>
<li><a href=\"/api/info\">/api/info</a></li>
<li><a href=\"/api/graph?kind=retrieval\">/api/graph?kind=retrieval&amp;model=tc&amp;kappa=10</a></li>
<li><a href=\"/api/graph?kind=relevance\">/api/graph?kind=relevance&amp;model=tc&amp;kappa=10</a></li>
<li><a href=\"/api/report\">/api/report?model=tc&amp;kappa=10</a></li>
</ul>
</body></html>
";

pub fn router(state: Shared, viewer_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/info", get(info))
        .route("/api/graph", get(graph))
        .route("/api/report", get(report))
        .with_state(state);
    match viewer_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(|| async { Html(INDEX) })),
    }
}

/// Blocks serving until the process is stopped.
pub fn serve(config: &ServeConfig) -> Result<(), CliError> {
    if !(config.cap.is_finite() && config.cap > 0.0) {
        return Err(CliError::Invalid(format!("cap must be positive, got {}", config.cap)));
    }
    let analysis = load_analysis(
        &config.data_input,
        &config.embedding_input,
        config.data_format,
        config.kappa,
    )?;
    let state = Arc::new(ServeState {
        analysis,
        kappa: config.kappa,
        model: config.model,
        cap: config.cap,
    });
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(CliError::Server)?;
    runtime.block_on(async {
        let addr = format!("127.0.0.1:{}", config.port);
        let listener = tokio::net::TcpListener::bind(&addr)
            .await
            .map_err(|source| CliError::Bind { addr: addr.clone(), source })?;
        let local = listener.local_addr().map_err(CliError::Server)?;
        println!("serving on http://{local}");
        axum::serve(listener, router(state, config.viewer_dir.clone()))
            .await
            .map_err(CliError::Server)
    })
}
