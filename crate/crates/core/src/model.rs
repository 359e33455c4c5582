//! Point sets, distance matrices, neighbour ranks and κ-neighbourhoods.
//!
//! Everything downstream works on [`RankMatrix`] rows: `ranks[i][j]` is the
//! position of `j` in the neighbour list of `i` (self first, rank 0), and the
//! κ-neighbourhood of `i` is the set of `j` with `1 <= ranks[i][j] <= κ`.
//! Ties in distance are broken by ascending point index.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance used when validating precomputed distance matrices.
pub const DISTANCE_TOLERANCE: f64 = 1e-9;

/// Which space a structure was built in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Data,
    Embedding,
}

/// An `N x d` coordinate matrix with optional per-point labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    coords: Vec<f64>,
    dim: usize,
    labels: Option<Vec<String>>,
    space: Space,
}

impl PointSet {
    pub fn new(
        space: Space,
        coords: Vec<f64>,
        dim: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::RaggedCoordinates {
                len: coords.len(),
                dim,
            });
        }
        let n = coords.len() / dim;
        if n < 2 {
            return Err(Error::TooFewPoints(n));
        }
        if let Some(pos) = coords.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteCoordinate {
                point: pos / dim,
                column: pos % dim,
            });
        }
        if let Some(labels) = &labels {
            if labels.len() != n {
                return Err(Error::LabelCount {
                    expected: n,
                    got: labels.len(),
                });
            }
        }
        Ok(Self {
            coords,
            dim,
            labels,
            space,
        })
    }

    /// Builds a point set from one `Vec` per point.
    pub fn from_rows(space: Space, rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::RaggedCoordinates {
                    len: row.len(),
                    dim,
                });
            }
            coords.extend_from_slice(row);
        }
        Self::new(space, coords, dim, None)
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        Self::new(self.space, self.coords, self.dim, Some(labels))
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// First two coordinates of point `i`; a 1-D point is placed on `y = 0`.
    pub fn planar(&self, i: usize) -> [f64; 2] {
        let p = self.point(i);
        [p[0], p.get(1).copied().unwrap_or(0.0)]
    }

    /// The same coordinates tagged as another space.
    pub fn retagged(&self, space: Space) -> Self {
        Self {
            space,
            ..self.clone()
        }
    }
}

/// A dissimilarity between two coordinate vectors.
///
/// Implementations must be symmetric and return finite non-negative values;
/// `compute_distances` checks the latter.
pub trait Metric: Sync {
    fn distance(&self, a: &[f64], b: &[f64]) -> f64;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Euclidean;

impl Metric for Euclidean {
    fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }
}

impl<F> Metric for F
where
    F: Fn(&[f64], &[f64]) -> f64 + Sync,
{
    fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        self(a, b)
    }
}

/// Symmetric `N x N` distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    values: Vec<f64>,
    space: Space,
}

impl DistanceMatrix {
    /// Validates a precomputed matrix (symmetry and zero diagonal within
    /// [`DISTANCE_TOLERANCE`]) and then symmetrizes it exactly by averaging.
    pub fn from_rows(space: Space, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::TooFewPoints(n));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                if !value.is_finite() || value < 0.0 {
                    return Err(Error::InvalidDistance { i, j, value });
                }
            }
            if row[i].abs() > DISTANCE_TOLERANCE {
                return Err(Error::NonZeroDiagonal { i, value: row[i] });
            }
        }
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (rows[i][j], rows[j][i]);
                if (a - b).abs() > DISTANCE_TOLERANCE {
                    return Err(Error::Asymmetric { i, j, a, b });
                }
                let mean = 0.5 * (a + b);
                values[i * n + j] = mean;
                values[j * n + i] = mean;
            }
        }
        Ok(Self { n, values, space })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    /// Applies `f` to every entry; `f` must map 0 to 0 and stay non-negative.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|&v| f(v)).collect(),
            space: self.space,
        }
    }
}

/// Pairwise distances between all points of `points` under `metric`.
pub fn compute_distances<M: Metric + ?Sized>(
    points: &PointSet,
    metric: &M,
) -> Result<DistanceMatrix> {
    let n = points.len();
    let upper: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            ((i + 1)..n)
                .map(|j| metric.distance(points.point(i), points.point(j)))
                .collect()
        })
        .collect();
    let mut values = vec![0.0; n * n];
    for (i, row) in upper.iter().enumerate() {
        for (offset, &value) in row.iter().enumerate() {
            let j = i + 1 + offset;
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidDistance { i, j, value });
            }
            values[i * n + j] = value;
            values[j * n + i] = value;
        }
    }
    Ok(DistanceMatrix {
        n,
        values,
        space: points.space(),
    })
}

/// Per-point neighbour ranks. Row `i` is a permutation of `0..N` with
/// `ranks[i][i] = 0`. Not symmetric in general.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankMatrix {
    n: usize,
    ranks: Vec<u32>,
    // order[i * n + r] = the point with rank r in row i
    order: Vec<u32>,
    space: Space,
}

impl RankMatrix {
    /// Builds a rank matrix from explicit rows, checking that each row is a
    /// permutation of `0..N` that ranks its own point first.
    pub fn from_rows(space: Space, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::TooFewPoints(n));
        }
        let mut ranks = vec![0u32; n * n];
        let mut order = vec![u32::MAX; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidRanks {
                    row: i,
                    reason: format!("length {} != {n}", row.len()),
                });
            }
            if row[i] != 0 {
                return Err(Error::InvalidRanks {
                    row: i,
                    reason: format!("self rank is {}", row[i]),
                });
            }
            for (j, &r) in row.iter().enumerate() {
                if r >= n || order[i * n + r] != u32::MAX {
                    return Err(Error::InvalidRanks {
                        row: i,
                        reason: format!("rank {r} repeated or out of range"),
                    });
                }
                order[i * n + r] = j as u32;
                ranks[i * n + j] = r as u32;
            }
        }
        Ok(Self {
            n,
            ranks,
            order,
            space,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// Rank of `j` in the neighbour list of `i`.
    pub fn rank(&self, i: usize, j: usize) -> usize {
        self.ranks[i * self.n + j] as usize
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.ranks[i * self.n..(i + 1) * self.n]
            .iter()
            .map(|&r| r as usize)
    }

    /// Points of row `i` sorted by rank (self first).
    pub fn sorted_neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.order[i * self.n..(i + 1) * self.n]
            .iter()
            .map(|&j| j as usize)
    }

    fn order_slice(&self, i: usize, from: usize, to: usize) -> &[u32] {
        &self.order[i * self.n + from..i * self.n + to]
    }
}

/// Ranks every row of `dist`, breaking distance ties by ascending index.
pub fn compute_ranks(dist: &DistanceMatrix) -> RankMatrix {
    let n = dist.len();
    let rows: Vec<(Vec<u32>, Vec<u32>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let d = dist.row(i);
            let mut order: Vec<u32> = (0..n as u32).filter(|&j| j as usize != i).collect();
            order.sort_unstable_by(|&a, &b| {
                d[a as usize]
                    .total_cmp(&d[b as usize])
                    .then_with(|| a.cmp(&b))
            });
            order.insert(0, i as u32);
            let mut ranks = vec![0u32; n];
            for (r, &j) in order.iter().enumerate() {
                ranks[j as usize] = r as u32;
            }
            (ranks, order)
        })
        .collect();
    let mut ranks = Vec::with_capacity(n * n);
    let mut order = Vec::with_capacity(n * n);
    for (r, o) in rows {
        ranks.extend(r);
        order.extend(o);
    }
    RankMatrix {
        n,
        ranks,
        order,
        space: dist.space(),
    }
}

/// κ-neighbourhoods read off a rank matrix.
#[derive(Debug, Clone, Copy)]
pub struct NeighbourhoodIndex<'a> {
    ranks: &'a RankMatrix,
    kappa: usize,
}

impl<'a> NeighbourhoodIndex<'a> {
    pub fn new(ranks: &'a RankMatrix, kappa: usize) -> Result<Self> {
        let max = ranks.len() - 1;
        if kappa == 0 || kappa > max {
            return Err(Error::KappaOutOfRange { kappa, max });
        }
        Ok(Self { ranks, kappa })
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &'a RankMatrix {
        self.ranks
    }

    pub fn space(&self) -> Space {
        self.ranks.space()
    }

    /// Whether `j` is one of the κ nearest neighbours of `i`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        let r = self.ranks.rank(i, j);
        r >= 1 && r <= self.kappa
    }

    /// The κ nearest neighbours of `i`, nearest first.
    pub fn neighbourhood(&self, i: usize) -> Result<Vec<usize>> {
        self.check(i)?;
        Ok(self.members(i).collect())
    }

    pub(crate) fn members(&self, i: usize) -> impl Iterator<Item = usize> + 'a {
        self.ranks
            .order_slice(i, 1, self.kappa + 1)
            .iter()
            .map(|&j| j as usize)
    }

    pub(crate) fn check(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.len(),
            });
        }
        Ok(())
    }
}
