//! Neighbourhood-graph diagnostics for dimensionality-reduction embeddings.
//!
//! Given a data set and its low-dimensional embedding, this crate ranks the
//! neighbours of every point in both spaces, scores each κ-neighbourhood
//! relation with precision/recall or trustworthiness/continuity penalties,
//! and builds two directed graphs drawn over the embedding:
//!
//! * the **retrieval** graph links each point to its κ nearest neighbours in
//!   the embedding, coloured by how far those neighbours really are (false
//!   neighbours, GnBu);
//! * the **relevance** graph links each point to its κ nearest neighbours in
//!   the data, coloured by how far the embedding put them (missed
//!   neighbours, OrRd).
//!
//! ```
//! use ming_core::prelude::*;
//!
//! let data = PointSet::from_rows(Space::Data, &[vec![0.0], vec![1.0], vec![3.0], vec![10.0]])?;
//! let embedding = PointSet::from_rows(Space::Embedding, &[vec![0.0, 0.0], vec![1.0, 0.0], vec![3.0, 0.0], vec![10.0, 0.0]])?;
//! let analysis = Analysis::new(DataSource::Points(data), embedding)?;
//! let report = analysis.report(IndicatorPair::TrustworthinessContinuity, 2)?;
//! assert_eq!(report.global_false, 1.0);
//! # Ok::<(), ming_core::Error>(())
//! ```

pub mod analysis;
pub mod bundling;
pub mod error;
pub mod export;
pub mod graphs;
pub mod io;
pub mod model;
pub mod penalties;
pub mod render;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::analysis::{Analysis, Snapshot};
    pub use crate::bundling::{bundle, BundleConfig, BundledEdge, Bundling, PenaltyBins};
    pub use crate::graphs::{
        build_relevance_graph, build_retrieval_graph, classify_relation, EdgeClass, GraphKind,
        MingGraph,
    };
    pub use crate::io::{DataSource, InputFormat};
    pub use crate::model::{
        compute_distances, compute_ranks, DistanceMatrix, Euclidean, Metric, NeighbourhoodIndex,
        PointSet, RankMatrix, Space,
    };
    pub use crate::penalties::{
        global_indicator, normalizer, pairwise_penalty, pointwise_aggregate, IndicatorPair,
        Neighbourhoods, PenaltyRule, QualityReport, Side,
    };
    pub use crate::render::{
        colour_of, render_graph, render_graph_with_report, render_report_overlay, Background,
        ColourScale, RenderSpec, Rgb, Scheme,
    };
}
