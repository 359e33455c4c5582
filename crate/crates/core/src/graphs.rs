//! Retrieval and relevance neighbourhood graphs.
//!
//! The retrieval graph links every point to its κ nearest neighbours in the
//! embedding and weighs each edge by its false-neighbour penalty; the
//! relevance graph uses the data-space neighbours and missed-neighbour
//! penalties. Both keep directed edges individually.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::PointSet;
use crate::penalties::{Neighbourhoods, PenaltyRule, Side};

/// How a relation `(i, j)` fares across the two spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    /// Neighbour in both spaces.
    Reliable,
    /// Neighbour in the embedding only.
    FalseNbr,
    /// Neighbour in the data space only.
    MissedNbr,
    NonExistent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Retrieval,
    Relevance,
}

impl GraphKind {
    pub fn id(&self) -> &'static str {
        match self {
            GraphKind::Retrieval => "retrieval",
            GraphKind::Relevance => "relevance",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        match id {
            "retrieval" => Some(GraphKind::Retrieval),
            "relevance" => Some(GraphKind::Relevance),
            _ => None,
        }
    }

    pub fn side(&self) -> Side {
        match self {
            GraphKind::Retrieval => Side::FalseNeighbours,
            GraphKind::Relevance => Side::MissedNeighbours,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub penalty: f64,
    /// Whether `(dst, src)` is also an edge of the same graph.
    pub reverse_exists: bool,
    pub class: EdgeClass,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub id: usize,
    pub position: [f64; 2],
    pub label: Option<String>,
}

/// A directed weighted κ-neighbourhood graph drawn at embedding positions.
#[derive(Debug, Clone, PartialEq)]
pub struct MingGraph {
    pub kind: GraphKind,
    pub kappa: usize,
    pub model: String,
    pub vertices: Vec<Vertex>,
    /// Grouped by source; within a source, nearest neighbour first.
    pub edges: Vec<Edge>,
}

impl MingGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges leaving `i`.
    pub fn out_edges(&self, i: usize) -> &[Edge] {
        let k = self.kappa;
        &self.edges[i * k..(i + 1) * k]
    }
}

/// Four-way classification of `(i, j)` by membership in both neighbourhoods.
pub fn classify_relation(nbrs: &Neighbourhoods<'_>, i: usize, j: usize) -> Result<EdgeClass> {
    nbrs.check_pair(i, j)?;
    Ok(class_of(nbrs, i, j))
}

fn class_of(nbrs: &Neighbourhoods<'_>, i: usize, j: usize) -> EdgeClass {
    match (nbrs.data().contains(i, j), nbrs.embedding().contains(i, j)) {
        (true, true) => EdgeClass::Reliable,
        (false, true) => EdgeClass::FalseNbr,
        (true, false) => EdgeClass::MissedNbr,
        (false, false) => EdgeClass::NonExistent,
    }
}

pub fn build_retrieval_graph<R: PenaltyRule + ?Sized>(
    embedding: &PointSet,
    nbrs: &Neighbourhoods<'_>,
    rule: &R,
) -> Result<MingGraph> {
    build_graph(GraphKind::Retrieval, embedding, nbrs, rule)
}

pub fn build_relevance_graph<R: PenaltyRule + ?Sized>(
    embedding: &PointSet,
    nbrs: &Neighbourhoods<'_>,
    rule: &R,
) -> Result<MingGraph> {
    build_graph(GraphKind::Relevance, embedding, nbrs, rule)
}

pub fn build_graph<R: PenaltyRule + ?Sized>(
    kind: GraphKind,
    embedding: &PointSet,
    nbrs: &Neighbourhoods<'_>,
    rule: &R,
) -> Result<MingGraph> {
    let n = nbrs.len();
    if embedding.len() != n {
        return Err(Error::SizeMismatch {
            data: n,
            embedding: embedding.len(),
        });
    }
    let side = kind.side();
    let source = match kind {
        GraphKind::Retrieval => nbrs.embedding(),
        GraphKind::Relevance => nbrs.data(),
    };
    let edges: Vec<Edge> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            nbrs.penalized(side, i).map(move |j| {
                let rel = nbrs.relation(i, j);
                let penalty = match side {
                    Side::FalseNeighbours => rule.false_penalty(rel),
                    Side::MissedNeighbours => rule.missed_penalty(rel),
                };
                Edge {
                    src: i,
                    dst: j,
                    penalty,
                    reverse_exists: source.contains(j, i),
                    class: class_of(nbrs, i, j),
                }
            })
        })
        .collect();
    let labels = embedding.labels();
    let vertices = (0..n)
        .map(|id| Vertex {
            id,
            position: embedding.planar(id),
            label: labels.map(|l| l[id].clone()),
        })
        .collect();
    Ok(MingGraph {
        kind,
        kappa: nbrs.kappa(),
        model: rule.name().to_string(),
        vertices,
        edges,
    })
}
