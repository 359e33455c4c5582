//! A data/embedding pair with cached rank matrices, evaluated on demand at
//! any scale κ.

use crate::error::{Error, Result};
use crate::export::graph_json;
use crate::graphs::{build_graph, GraphKind, MingGraph};
use crate::io::DataSource;
use crate::model::{compute_distances, compute_ranks, Euclidean, NeighbourhoodIndex, PointSet, RankMatrix, Space};
use crate::penalties::{global_indicator, IndicatorPair, Neighbourhoods, QualityReport};

#[derive(Debug, Clone)]
pub struct Analysis {
    embedding: PointSet,
    data_ranks: RankMatrix,
    embedding_ranks: RankMatrix,
}

/// Report and both graphs at one scale.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub report: QualityReport,
    pub retrieval: MingGraph,
    pub relevance: MingGraph,
}

impl Snapshot {
    pub fn graph(&self, kind: GraphKind) -> &MingGraph {
        match kind {
            GraphKind::Retrieval => &self.retrieval,
            GraphKind::Relevance => &self.relevance,
        }
    }

    pub fn graph_json(&self, kind: GraphKind) -> Result<String> {
        Ok(graph_json(self.graph(kind), &self.report)?)
    }
}

impl Analysis {
    /// Ranks both spaces. The embedding inherits the data labels when it has
    /// none of its own.
    pub fn new(data: DataSource, embedding: PointSet) -> Result<Self> {
        if data.len() != embedding.len() {
            return Err(Error::SizeMismatch {
                data: data.len(),
                embedding: embedding.len(),
            });
        }
        let mut embedding = embedding.retagged(Space::Embedding);
        if embedding.labels().is_none() {
            if let Some(labels) = data.labels() {
                embedding = embedding.with_labels(labels.to_vec())?;
            }
        }
        let data_dist = match data {
            DataSource::Points(p) => compute_distances(&p.retagged(Space::Data), &Euclidean)?,
            DataSource::Distances(d) => d,
        };
        let data_ranks = compute_ranks(&data_dist);
        drop(data_dist);
        let embedding_ranks = compute_ranks(&compute_distances(&embedding, &Euclidean)?);
        Ok(Self {
            embedding,
            data_ranks,
            embedding_ranks,
        })
    }

    pub fn len(&self) -> usize {
        self.embedding.len()
    }

    pub fn is_empty(&self) -> bool {
        self.embedding.is_empty()
    }

    pub fn embedding(&self) -> &PointSet {
        &self.embedding
    }

    pub fn data_ranks(&self) -> &RankMatrix {
        &self.data_ranks
    }

    pub fn embedding_ranks(&self) -> &RankMatrix {
        &self.embedding_ranks
    }

    pub fn neighbourhoods(&self, kappa: usize) -> Result<Neighbourhoods<'_>> {
        Neighbourhoods::new(
            NeighbourhoodIndex::new(&self.data_ranks, kappa)?,
            NeighbourhoodIndex::new(&self.embedding_ranks, kappa)?,
        )
    }

    pub fn report(&self, pair: IndicatorPair, kappa: usize) -> Result<QualityReport> {
        global_indicator(&pair, &self.neighbourhoods(kappa)?)
    }

    pub fn graph(&self, kind: GraphKind, pair: IndicatorPair, kappa: usize) -> Result<MingGraph> {
        build_graph(kind, &self.embedding, &self.neighbourhoods(kappa)?, &pair)
    }

    pub fn snapshot(&self, pair: IndicatorPair, kappa: usize) -> Result<Snapshot> {
        let nbrs = self.neighbourhoods(kappa)?;
        Ok(Snapshot {
            report: global_indicator(&pair, &nbrs)?,
            retrieval: build_graph(GraphKind::Retrieval, &self.embedding, &nbrs, &pair)?,
            relevance: build_graph(GraphKind::Relevance, &self.embedding, &nbrs, &pair)?,
        })
    }

    /// The viewer document for one graph.
    pub fn graph_json(&self, kind: GraphKind, pair: IndicatorPair, kappa: usize) -> Result<String> {
        let nbrs = self.neighbourhoods(kappa)?;
        let report = global_indicator(&pair, &nbrs)?;
        let graph = build_graph(kind, &self.embedding, &nbrs, &pair)?;
        Ok(graph_json(&graph, &report)?)
    }
}
