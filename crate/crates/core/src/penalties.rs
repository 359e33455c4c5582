//! Pairwise penalizations, their point-wise sums and the normalized
//! map-wise indicators.
//!
//! A relation `(i, j)` is penalized on the *false* side when `j` is among the
//! κ nearest neighbours of `i` in the embedding, and on the *missed* side when
//! it is among them in the data space. Reliable relations (present in both)
//! always cost 0; distorted ones cost something strictly positive.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::export::{sig12, sig12_vec};
use crate::model::{NeighbourhoodIndex, Space};

/// Excursions outside `[0, 1]` up to this size are treated as rounding.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// Which member of an indicator pair is being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Relations existing at least in the embedding (F: precision, trustworthiness).
    FalseNeighbours,
    /// Relations existing at least in the data space (M: recall, continuity).
    MissedNeighbours,
}

/// Ranks of `j` from `i` in both spaces at scale κ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub kappa: usize,
    pub data_rank: usize,
    pub embedding_rank: usize,
}

impl Relation {
    pub fn in_data(&self) -> bool {
        self.data_rank >= 1 && self.data_rank <= self.kappa
    }

    pub fn in_embedding(&self) -> bool {
        self.embedding_rank >= 1 && self.embedding_rank <= self.kappa
    }
}

/// A pairwise penalization rule for one (F, M) indicator pair.
///
/// `false_penalty` is only asked about relations with `in_embedding()`, and
/// `missed_penalty` only about relations with `in_data()`. Both must return 0
/// exactly when the relation also exists in the other space.
pub trait PenaltyRule: Sync {
    /// Short identifier used in reports and exports.
    fn name(&self) -> &str;

    fn false_penalty(&self, relation: Relation) -> f64;

    fn missed_penalty(&self, relation: Relation) -> f64;

    /// Upper bound of the point-wise sums for `n` points at scale `kappa`.
    fn upper_bound(&self, n: usize, kappa: usize) -> f64;
}

/// The two rank-based indicator pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndicatorPair {
    /// Precision / recall: every false or missed neighbour costs 1.
    #[serde(rename = "pr")]
    PrecisionRecall,
    /// Trustworthiness / continuity: a false or missed neighbour costs its
    /// rank excess beyond κ in the other space.
    #[serde(rename = "tc")]
    TrustworthinessContinuity,
}

impl IndicatorPair {
    pub const ALL: [IndicatorPair; 2] = [
        IndicatorPair::PrecisionRecall,
        IndicatorPair::TrustworthinessContinuity,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            IndicatorPair::PrecisionRecall => "pr",
            IndicatorPair::TrustworthinessContinuity => "tc",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.id() == id)
    }
}

impl PenaltyRule for IndicatorPair {
    fn name(&self) -> &str {
        self.id()
    }

    fn false_penalty(&self, rel: Relation) -> f64 {
        if rel.in_data() {
            return 0.0;
        }
        match self {
            IndicatorPair::PrecisionRecall => 1.0,
            IndicatorPair::TrustworthinessContinuity => (rel.data_rank - rel.kappa) as f64,
        }
    }

    fn missed_penalty(&self, rel: Relation) -> f64 {
        if rel.in_embedding() {
            return 0.0;
        }
        match self {
            IndicatorPair::PrecisionRecall => 1.0,
            IndicatorPair::TrustworthinessContinuity => {
                (rel.embedding_rank - rel.kappa) as f64
            }
        }
    }

    fn upper_bound(&self, n: usize, kappa: usize) -> f64 {
        match self {
            IndicatorPair::PrecisionRecall => kappa as f64,
            IndicatorPair::TrustworthinessContinuity => {
                // worst case: the κ embedding neighbours are the κ farthest
                // data points, limited to ranks above κ
                let (n, k) = (n as f64, kappa as f64);
                if 2.0 * k < n {
                    k * (2.0 * n - 3.0 * k - 1.0) / 2.0
                } else {
                    (n - k) * (n - k - 1.0) / 2.0
                }
            }
        }
    }
}

/// Data-space and embedding-space κ-neighbourhoods over the same points.
#[derive(Debug, Clone, Copy)]
pub struct Neighbourhoods<'a> {
    data: NeighbourhoodIndex<'a>,
    embedding: NeighbourhoodIndex<'a>,
}

impl<'a> Neighbourhoods<'a> {
    pub fn new(data: NeighbourhoodIndex<'a>, embedding: NeighbourhoodIndex<'a>) -> Result<Self> {
        for (index, expected) in [(&data, Space::Data), (&embedding, Space::Embedding)] {
            if index.space() != expected {
                return Err(Error::SpaceMismatch {
                    expected,
                    got: index.space(),
                });
            }
        }
        if data.len() != embedding.len() {
            return Err(Error::SizeMismatch {
                data: data.len(),
                embedding: embedding.len(),
            });
        }
        if data.kappa() != embedding.kappa() {
            return Err(Error::KappaMismatch {
                data: data.kappa(),
                embedding: embedding.kappa(),
            });
        }
        Ok(Self { data, embedding })
    }

    pub fn data(&self) -> &NeighbourhoodIndex<'a> {
        &self.data
    }

    pub fn embedding(&self) -> &NeighbourhoodIndex<'a> {
        &self.embedding
    }

    pub fn kappa(&self) -> usize {
        self.data.kappa()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn relation(&self, i: usize, j: usize) -> Relation {
        Relation {
            kappa: self.kappa(),
            data_rank: self.data.ranks().rank(i, j),
            embedding_rank: self.embedding.ranks().rank(i, j),
        }
    }

    /// Source set of penalized relations from `i` on `side`, nearest first.
    pub(crate) fn penalized(&self, side: Side, i: usize) -> impl Iterator<Item = usize> + 'a {
        match side {
            Side::FalseNeighbours => self.embedding.members(i),
            Side::MissedNeighbours => self.data.members(i),
        }
    }

    pub(crate) fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.data.check(i)?;
        self.data.check(j)?;
        if i == j {
            return Err(Error::SelfRelation(i));
        }
        Ok(())
    }
}

fn penalty_unchecked<R: PenaltyRule + ?Sized>(rule: &R, side: Side, rel: Relation) -> f64 {
    match side {
        Side::FalseNeighbours => rule.false_penalty(rel),
        Side::MissedNeighbours => rule.missed_penalty(rel),
    }
}

/// Penalty of relation `(i, j)` on `side`.
///
/// Asking about a relation that is not penalized on that side (for the false
/// side: `j` outside the embedding neighbourhood of `i`) is an error.
pub fn pairwise_penalty<R: PenaltyRule + ?Sized>(
    rule: &R,
    side: Side,
    nbrs: &Neighbourhoods<'_>,
    i: usize,
    j: usize,
) -> Result<f64> {
    nbrs.check_pair(i, j)?;
    let rel = nbrs.relation(i, j);
    let penalized = match side {
        Side::FalseNeighbours => rel.in_embedding(),
        Side::MissedNeighbours => rel.in_data(),
    };
    if !penalized {
        return Err(Error::NotPenalized { i, j });
    }
    Ok(penalty_unchecked(rule, side, rel))
}

/// Sum of the penalties of all relations from `i` penalized on `side`.
pub fn pointwise_aggregate<R: PenaltyRule + ?Sized>(
    rule: &R,
    side: Side,
    nbrs: &Neighbourhoods<'_>,
    i: usize,
) -> Result<f64> {
    nbrs.data().check(i)?;
    Ok(pointwise_unchecked(rule, side, nbrs, i))
}

fn pointwise_unchecked<R: PenaltyRule + ?Sized>(
    rule: &R,
    side: Side,
    nbrs: &Neighbourhoods<'_>,
    i: usize,
) -> f64 {
    nbrs.penalized(side, i)
        .map(|j| penalty_unchecked(rule, side, nbrs.relation(i, j)))
        .sum()
}

/// Point-wise sums for every point.
pub fn pointwise_all<R: PenaltyRule + ?Sized>(
    rule: &R,
    side: Side,
    nbrs: &Neighbourhoods<'_>,
) -> Vec<f64> {
    (0..nbrs.len())
        .into_par_iter()
        .map(|i| pointwise_unchecked(rule, side, nbrs, i))
        .collect()
}

/// Largest achievable point-wise sum, used to scale indicators into `[0, 1]`.
///
/// For trustworthiness/continuity at κ = N − 1 no relation can be distorted
/// and the bound is 0; 1 is returned instead so the indicators stay defined
/// (they are 1 regardless).
pub fn normalizer<R: PenaltyRule + ?Sized>(rule: &R, n: usize, kappa: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    if kappa == 0 || kappa >= n {
        return Err(Error::KappaOutOfRange { kappa, max: n - 1 });
    }
    let bound = rule.upper_bound(n, kappa);
    Ok(if bound > 0.0 { bound } else { 1.0 })
}

/// Point-wise sums and global indicators at one scale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityReport {
    pub kappa: usize,
    pub model: String,
    #[serde(serialize_with = "sig12")]
    pub normalizer: f64,
    #[serde(rename = "pointwise_F", serialize_with = "sig12_vec")]
    pub pointwise_false: Vec<f64>,
    #[serde(rename = "pointwise_M", serialize_with = "sig12_vec")]
    pub pointwise_missed: Vec<f64>,
    #[serde(rename = "global_F", serialize_with = "sig12")]
    pub global_false: f64,
    #[serde(rename = "global_M", serialize_with = "sig12")]
    pub global_missed: f64,
    /// Unclamped values, kept for debugging.
    #[serde(skip)]
    pub raw_false: f64,
    #[serde(skip)]
    pub raw_missed: f64,
}

fn indicator(pointwise: &[f64], normalizer: f64) -> (f64, f64) {
    let n = pointwise.len() as f64;
    let raw = 1.0 - pointwise.iter().map(|v| v / normalizer).sum::<f64>() / n;
    debug_assert!(
        (-CLAMP_TOLERANCE..=1.0 + CLAMP_TOLERANCE).contains(&raw),
        "indicator {raw} outside [0, 1]"
    );
    (raw.clamp(0.0, 1.0), raw)
}

/// Global F and M indicators: `1 - mean_i(I_i / C)`.
pub fn global_indicator<R: PenaltyRule + ?Sized>(
    rule: &R,
    nbrs: &Neighbourhoods<'_>,
) -> Result<QualityReport> {
    let n = nbrs.len();
    let kappa = nbrs.kappa();
    let c = normalizer(rule, n, kappa)?;
    let pointwise_false = pointwise_all(rule, Side::FalseNeighbours, nbrs);
    let pointwise_missed = pointwise_all(rule, Side::MissedNeighbours, nbrs);
    let (global_false, raw_false) = indicator(&pointwise_false, c);
    let (global_missed, raw_missed) = indicator(&pointwise_missed, c);
    Ok(QualityReport {
        kappa,
        model: rule.name().to_string(),
        normalizer: c,
        pointwise_false,
        pointwise_missed,
        global_false,
        global_missed,
        raw_false,
        raw_missed,
    })
}
