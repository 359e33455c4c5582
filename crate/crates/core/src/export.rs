//! JSON documents consumed by the viewer.
//!
//! Field order is fixed by the struct definitions and every real number is
//! rounded to at most 12 significant digits before it is written.

use serde::{Serialize, Serializer};

use crate::graphs::{EdgeClass, GraphKind, MingGraph};
use crate::penalties::QualityReport;

pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 12 significant digits; the shortest representation of the
/// result never needs more than 12.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub(crate) fn sig12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig12(*x))
}

pub(crate) fn sig12_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|&x| round_sig12(x)))
}

#[derive(Debug, Serialize)]
pub struct NodeDoc<'a> {
    pub id: usize,
    #[serde(serialize_with = "sig12")]
    pub x: f64,
    #[serde(serialize_with = "sig12")]
    pub y: f64,
    pub label: Option<&'a str>,
}

#[derive(Debug, Serialize)]
pub struct EdgeDoc {
    pub src: usize,
    pub dst: usize,
    #[serde(serialize_with = "sig12")]
    pub penalty: f64,
    pub reverse_exists: bool,
    pub class: EdgeClass,
}

/// One graph plus its quality report, as served to the viewer.
#[derive(Debug, Serialize)]
pub struct GraphDocument<'a> {
    pub kind: GraphKind,
    pub kappa: usize,
    pub model: &'a str,
    pub nodes: Vec<NodeDoc<'a>>,
    pub edges: Vec<EdgeDoc>,
    pub report: &'a QualityReport,
    pub schema_version: u32,
}

impl<'a> GraphDocument<'a> {
    pub fn new(graph: &'a MingGraph, report: &'a QualityReport) -> Self {
        Self {
            kind: graph.kind,
            kappa: graph.kappa,
            model: &graph.model,
            nodes: graph
                .vertices
                .iter()
                .map(|v| NodeDoc {
                    id: v.id,
                    x: v.position[0],
                    y: v.position[1],
                    label: v.label.as_deref(),
                })
                .collect(),
            edges: graph
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    src: e.src,
                    dst: e.dst,
                    penalty: e.penalty,
                    reverse_exists: e.reverse_exists,
                    class: e.class,
                })
                .collect(),
            report,
            schema_version: SCHEMA_VERSION,
        }
    }
}

pub fn graph_json(graph: &MingGraph, report: &QualityReport) -> serde_json::Result<String> {
    serde_json::to_string(&GraphDocument::new(graph, report))
}

pub fn report_json(report: &QualityReport) -> serde_json::Result<String> {
    serde_json::to_string_pretty(report)
}
