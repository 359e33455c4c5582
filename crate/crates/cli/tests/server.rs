use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use ming_cli::{router, run, Output, RunConfig, ServeState};
use ming_core::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tower::ServiceExt;

const N: usize = 40;

fn rows(seed: u64, dim: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..N).map(|_| (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()).collect()
}

fn write_csv(path: &Path, rows: &[Vec<f64>]) {
    let text: String = rows
        .iter()
        .map(|r| r.iter().map(f64::to_string).collect::<Vec<_>>().join(",") + "\n")
        .collect();
    fs::write(path, text).unwrap();
}

struct Fixture {
    dir: tempfile::TempDir,
    app: Router,
}

fn fixture(viewer: bool) -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let (d, e) = (dir.path().join("d.csv"), dir.path().join("e.csv"));
    write_csv(&d, &rows(1, 7));
    write_csv(&e, &rows(2, 2));
    let analysis = ming_cli::load_analysis(&d, &e, InputFormat::Auto, 10).unwrap();
    let state = Arc::new(ServeState {
        analysis,
        kappa: 10,
        model: IndicatorPair::TrustworthinessContinuity,
        cap: 20.0,
    });
    let viewer_dir = viewer.then(|| {
        let v = dir.path().join("viewer");
        fs::create_dir(&v).unwrap();
        fs::write(v.join("index.html"), "<p>viewer</p>").unwrap();
        v
    });
    Fixture {
        app: router(state, viewer_dir),
        dir,
    }
}

async fn get(app: &Router, uri: &str) -> (StatusCode, String) {
    let response = app
        .clone()
        .oneshot(Request::get(uri).body(Body::empty()).unwrap())
        .await
        .unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

fn batch(dir: &Path, kappa: usize, model: IndicatorPair) -> std::path::PathBuf {
    let out = dir.join(format!("batch-{kappa}-{}", model.id()));
    let config = RunConfig {
        data_input: dir.join("d.csv"),
        embedding_input: dir.join("e.csv"),
        data_format: InputFormat::Auto,
        kappa,
        model,
        cap: 20.0,
        outputs: BTreeSet::from([Output::Json, Output::Report]),
        bundle: None,
        render: RenderSpec::default(),
        scheme_override: None,
        out_dir: out.clone(),
    };
    run(&config).unwrap();
    out
}

#[tokio::test]
async fn served_json_matches_batch_output() {
    let f = fixture(false);
    let mut bodies = Vec::new();
    for kappa in [4, 10] {
        for model in IndicatorPair::ALL {
            let out = batch(f.dir.path(), kappa, model);
            for kind in ["retrieval", "relevance"] {
                let uri = format!("/api/graph?kind={kind}&model={}&kappa={kappa}", model.id());
                let (status, body) = get(&f.app, &uri).await;
                assert_eq!(status, StatusCode::OK);
                assert_eq!(body, fs::read_to_string(out.join(format!("{kind}.json"))).unwrap(), "{uri}");
                let doc: serde_json::Value = serde_json::from_str(&body).unwrap();
                assert_eq!(doc["edges"].as_array().unwrap().len(), N * kappa);
                bodies.push(body);
            }
            let (_, report) = get(&f.app, &format!("/api/report?model={}&kappa={kappa}", model.id())).await;
            assert_eq!(report, fs::read_to_string(out.join("report.json")).unwrap());
        }
    }
    let distinct: BTreeSet<&String> = bodies.iter().collect();
    assert_eq!(distinct.len(), bodies.len());
}

#[tokio::test]
async fn defaults_come_from_the_server_config() {
    let f = fixture(false);
    let (_, implicit) = get(&f.app, "/api/graph").await;
    let (_, explicit) = get(&f.app, "/api/graph?kind=retrieval&model=tc&kappa=10").await;
    assert_eq!(implicit, explicit);
}

#[tokio::test]
async fn bad_requests_are_rejected() {
    let f = fixture(false);
    for (uri, want) in [
        ("/api/graph?kind=retrieval&kappa=0", StatusCode::BAD_REQUEST),
        ("/api/graph?kind=retrieval&kappa=40", StatusCode::BAD_REQUEST),
        ("/api/graph?kind=retrieval&kappa=ten", StatusCode::BAD_REQUEST),
        ("/api/graph?kind=retrieval&model=xy", StatusCode::BAD_REQUEST),
        ("/api/graph?kind=backbone&kappa=4", StatusCode::NOT_FOUND),
        ("/api/report?kappa=0", StatusCode::BAD_REQUEST),
    ] {
        let (status, body) = get(&f.app, uri).await;
        assert_eq!(status, want, "{uri}");
        let err: serde_json::Value = serde_json::from_str(&body).unwrap();
        assert!(err["error"].as_str().unwrap().len() > 5, "{uri}");
    }
    let (_, body) = get(&f.app, "/api/graph?kappa=0").await;
    assert!(body.contains("kappa must be in 1..=39"), "{body}");
}

#[tokio::test]
async fn info_advertises_range_and_colours() {
    let f = fixture(false);
    let (status, body) = get(&f.app, "/api/info").await;
    assert_eq!(status, StatusCode::OK);
    let info: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(info["n"], N);
    assert_eq!(info["kappa_min"], 1);
    assert_eq!(info["kappa_max"], N - 1);
    assert_eq!(info["schema_version"], ming_core::export::SCHEMA_VERSION);
    assert_eq!(info["cap"], 20.0);
    let gnbu = info["schemes"]["retrieval"]["anchors"].as_array().unwrap();
    assert_eq!(gnbu.first().unwrap(), "#FFFFFF");
    assert_eq!(gnbu.last().unwrap(), "#084081");
    assert_eq!(info["schemes"]["relevance"]["id"], "orrd");
}

#[tokio::test]
async fn index_and_viewer_assets() {
    let f = fixture(false);
    let (status, body) = get(&f.app, "/").await;
    assert_eq!(status, StatusCode::OK);
    assert!(body.contains("/api/graph"));
    let f = fixture(true);
    let (status, body) = get(&f.app, "/index.html").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, "<p>viewer</p>");
    let (status, _) = get(&f.app, "/api/info").await;
    assert_eq!(status, StatusCode::OK);
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_requests_agree() {
    let f = fixture(false);
    let tasks: Vec<_> = (0..16)
        .map(|k| {
            let app = f.app.clone();
            let kappa = [4, 10][k % 2];
            tokio::spawn(async move { (kappa, get(&app, &format!("/api/graph?kind=relevance&kappa={kappa}")).await.1) })
        })
        .collect();
    let mut seen = std::collections::HashMap::new();
    for t in tasks {
        let (kappa, body) = t.await.unwrap();
        assert_eq!(seen.entry(kappa).or_insert_with(|| body.clone()), &body);
    }
    assert_eq!(seen.len(), 2);
}
