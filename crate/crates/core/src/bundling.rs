//! Density-based edge bundling with edges grouped by penalty.
//!
//! Edges are first split into penalty bins; each bin is bundled on its own so
//! only edges of similar distortion attract each other. Within a bin, every
//! iteration splats all polyline samples into a density grid with a quartic
//! kernel, moves interior samples up the density gradient, smooths the
//! polylines and shrinks the kernel.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::MingGraph;
use crate::render::{ColourScale, Rgb};

/// Penalty bins given by their inclusive upper bounds.
///
/// Bounds `[b0, b1, ..]` describe `[0, b0]`, `(b0, b1]`, ... and a final open
/// bin `(b_last, +inf)`, which together partition `[0, +inf)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PenaltyBins {
    upper: Vec<f64>,
}

impl Default for PenaltyBins {
    /// `{0}`, `(0, 10]`, `(10, 20]`, `(20, +inf)`.
    fn default() -> Self {
        Self {
            upper: vec![0.0, 10.0, 20.0],
        }
    }
}

impl PenaltyBins {
    pub fn new(upper: Vec<f64>) -> Result<Self> {
        if upper.is_empty() {
            return Err(Error::InvalidBins("need at least one bound".into()));
        }
        if upper.iter().any(|b| !b.is_finite() || *b < 0.0) {
            return Err(Error::InvalidBins(format!(
                "bounds must be finite and non-negative: {upper:?}"
            )));
        }
        if upper.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidBins(format!(
                "bounds must be strictly increasing: {upper:?}"
            )));
        }
        Ok(Self { upper })
    }

    /// Parses a comma-separated list of bounds, e.g. `0,10,20`.
    pub fn parse(text: &str) -> Result<Self> {
        let upper = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidBins(format!("not a number: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(upper)
    }

    pub fn bounds(&self) -> &[f64] {
        &self.upper
    }

    pub fn len(&self) -> usize {
        self.upper.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, penalty: f64) -> usize {
        self.upper
            .iter()
            .position(|&b| penalty <= b)
            .unwrap_or(self.upper.len())
    }

    /// Whether `penalty` falls into bin `k`.
    pub fn contains(&self, k: usize, penalty: f64) -> bool {
        let above_lower = k == 0 || penalty > self.upper[k - 1];
        let below_upper = self.upper.get(k).is_none_or(|&b| penalty <= b);
        penalty >= 0.0 && above_lower && below_upper
    }

    /// Representative penalty of bin `k`; `None` for the open last bin.
    pub fn central(&self, k: usize) -> Option<f64> {
        match k {
            0 => Some(self.upper[0] / 2.0),
            k if k < self.upper.len() => Some(0.5 * (self.upper[k - 1] + self.upper[k])),
            _ => None,
        }
    }

    /// Draw colour of bin `k`: the colour of its central penalty, or the
    /// saturated colour for the open last bin.
    pub fn colour(&self, k: usize, scale: &ColourScale) -> Rgb {
        match self.central(k) {
            Some(p) => scale.colour_of(p),
            None => scale.darkest(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BundleConfig {
    pub bins: PenaltyBins,
    pub iterations: usize,
    /// Defaults to a tenth of the vertex bounding-box diagonal.
    pub kernel_radius_initial: Option<f64>,
    pub radius_decay: f64,
    pub samples_per_edge: usize,
    pub smoothing_passes: usize,
    pub grid_resolution: usize,
}

impl Default for BundleConfig {
    fn default() -> Self {
        Self {
            bins: PenaltyBins::default(),
            iterations: 10,
            kernel_radius_initial: None,
            radius_decay: 0.7,
            samples_per_edge: 15,
            smoothing_passes: 1,
            grid_resolution: 512,
        }
    }
}

impl BundleConfig {
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidBins(msg));
        if self.iterations == 0 {
            return invalid("iterations must be at least 1".into());
        }
        if self.samples_per_edge < 2 {
            return invalid("samples_per_edge must be at least 2".into());
        }
        if !(self.radius_decay > 0.0 && self.radius_decay < 1.0) {
            return invalid(format!("radius_decay must be in (0, 1), got {}", self.radius_decay));
        }
        if self.grid_resolution < 4 {
            return invalid("grid_resolution must be at least 4".into());
        }
        if let Some(r) = self.kernel_radius_initial {
            if !(r.is_finite() && r > 0.0) {
                return invalid(format!("kernel radius must be positive, got {r}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BundledEdge {
    pub src: usize,
    pub dst: usize,
    /// First point is the source position, last the destination position.
    pub polyline: Vec<[f64; 2]>,
    pub bin_index: usize,
    pub draw_colour: Rgb,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bundling {
    /// One per directed edge, in graph order.
    pub edges: Vec<BundledEdge>,
    /// All vertices coincide; polylines were left straight.
    pub degenerate: bool,
}

/// Square grid covering the vertex bounding box inflated by the initial
/// kernel radius. Density is stored at the grid nodes.
#[derive(Debug, Clone, Copy)]
struct Grid {
    origin: [f64; 2],
    max: [f64; 2],
    cell: f64,
    cols: usize,
    rows: usize,
}

impl Grid {
    fn covering(lo: [f64; 2], hi: [f64; 2], margin: f64, resolution: usize) -> Self {
        let origin = [lo[0] - margin, lo[1] - margin];
        let max = [hi[0] + margin, hi[1] + margin];
        let extent = (max[0] - origin[0]).max(max[1] - origin[1]);
        let cell = extent / resolution as f64;
        let nodes = |len: f64| ((len / cell).ceil() as usize).clamp(1, resolution) + 1;
        Self {
            origin,
            max,
            cell,
            cols: nodes(max[0] - origin[0]),
            rows: nodes(max[1] - origin[1]),
        }
    }

    fn splat(&self, samples: &[[f64; 2]], radius: f64) -> Vec<f64> {
        let mut density = vec![0.0; self.rows * self.cols];
        let r2 = radius * radius;
        density
            .par_chunks_mut(self.cols)
            .enumerate()
            .for_each(|(r, row)| {
                let y = self.origin[1] + r as f64 * self.cell;
                for p in samples {
                    let dy = y - p[1];
                    if dy.abs() >= radius {
                        continue;
                    }
                    let half = (r2 - dy * dy).sqrt();
                    let c0 = ((p[0] - half - self.origin[0]) / self.cell).ceil().max(0.0) as usize;
                    let c1 = ((p[0] + half - self.origin[0]) / self.cell).floor();
                    if c1 < 0.0 {
                        continue;
                    }
                    let c1 = (c1 as usize).min(self.cols - 1);
                    for (c, cell) in row.iter_mut().enumerate().take(c1 + 1).skip(c0) {
                        let dx = self.origin[0] + c as f64 * self.cell - p[0];
                        let u = 1.0 - (dx * dx + dy * dy) / r2;
                        if u > 0.0 {
                            *cell += u * u;
                        }
                    }
                }
            });
        density
    }

    /// Bilinear density and its gradient at `p`.
    fn sample(&self, density: &[f64], p: [f64; 2]) -> (f64, [f64; 2]) {
        let gx = ((p[0] - self.origin[0]) / self.cell).clamp(0.0, (self.cols - 1) as f64);
        let gy = ((p[1] - self.origin[1]) / self.cell).clamp(0.0, (self.rows - 1) as f64);
        let c = (gx.floor() as usize).min(self.cols - 2);
        let r = (gy.floor() as usize).min(self.rows - 2);
        let (fx, fy) = (gx - c as f64, gy - r as f64);
        let at = |r: usize, c: usize| density[r * self.cols + c];
        let (d00, d10, d01, d11) = (at(r, c), at(r, c + 1), at(r + 1, c), at(r + 1, c + 1));
        let value = (1.0 - fy) * ((1.0 - fx) * d00 + fx * d10) + fy * ((1.0 - fx) * d01 + fx * d11);
        let ddx = ((1.0 - fy) * (d10 - d00) + fy * (d11 - d01)) / self.cell;
        let ddy = ((1.0 - fx) * (d01 - d00) + fx * (d11 - d10)) / self.cell;
        (value, [ddx, ddy])
    }

    fn clamp(&self, p: [f64; 2]) -> [f64; 2] {
        [
            p[0].clamp(self.origin[0], self.max[0]),
            p[1].clamp(self.origin[1], self.max[1]),
        ]
    }
}

fn straight(from: [f64; 2], to: [f64; 2], samples: usize) -> Vec<[f64; 2]> {
    let last = (samples - 1) as f64;
    (0..samples)
        .map(|k| {
            if k == 0 {
                return from;
            }
            if k == samples - 1 {
                return to;
            }
            let t = k as f64 / last;
            [from[0] + t * (to[0] - from[0]), from[1] + t * (to[1] - from[1])]
        })
        .collect()
}

fn smooth(line: &mut [[f64; 2]], passes: usize) {
    let n = line.len();
    if n < 3 {
        return;
    }
    let mut prev = line.to_vec();
    for _ in 0..passes {
        prev.copy_from_slice(line);
        for k in 1..n - 1 {
            for a in 0..2 {
                line[k][a] = 0.5 * prev[k][a] + 0.25 * (prev[k - 1][a] + prev[k + 1][a]);
            }
        }
    }
}

fn advect(line: &mut [[f64; 2]], grid: &Grid, density: &[f64], radius: f64) {
    let n = line.len();
    for p in line.iter_mut().take(n - 1).skip(1) {
        let (rho, grad) = grid.sample(density, *p);
        if rho <= 0.0 {
            continue;
        }
        // mean-shift style step, at most one grid cell long
        let gain = radius * radius / (4.0 * rho);
        let mut step = [grad[0] * gain, grad[1] * gain];
        let len = step[0].hypot(step[1]);
        if len > grid.cell {
            step = [step[0] * grid.cell / len, step[1] * grid.cell / len];
        }
        *p = grid.clamp([p[0] + step[0], p[1] + step[1]]);
    }
}

fn bundle_bin(lines: &mut [Vec<[f64; 2]>], grid: &Grid, radius0: f64, config: &BundleConfig) {
    let mut radius = radius0;
    for _ in 0..config.iterations {
        let samples: Vec<[f64; 2]> = lines.iter().flatten().copied().collect();
        let density = grid.splat(&samples, radius);
        lines.par_iter_mut().for_each(|line| {
            advect(line, grid, &density, radius);
            smooth(line, config.smoothing_passes);
        });
        radius *= config.radius_decay;
    }
}

/// Bundles every directed edge of `graph`, one penalty bin at a time.
pub fn bundle(graph: &MingGraph, config: &BundleConfig, scale: &ColourScale) -> Result<Bundling> {
    config.validate()?;
    if graph.edges.is_empty() {
        return Err(Error::InvalidBins("graph has no edges to bundle".into()));
    }
    if let Some(v) = graph
        .vertices
        .iter()
        .find(|v| !v.position.iter().all(|c| c.is_finite()))
    {
        return Err(Error::NonFinitePosition(v.id));
    }

    let pos = |i: usize| graph.vertices[i].position;
    let mut lines: Vec<Vec<[f64; 2]>> = graph
        .edges
        .iter()
        .map(|e| straight(pos(e.src), pos(e.dst), config.samples_per_edge))
        .collect();
    let bins: Vec<usize> = graph
        .edges
        .iter()
        .map(|e| config.bins.index_of(e.penalty))
        .collect();

    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for v in &graph.vertices {
        for a in 0..2 {
            lo[a] = lo[a].min(v.position[a]);
            hi[a] = hi[a].max(v.position[a]);
        }
    }
    let diagonal = (hi[0] - lo[0]).hypot(hi[1] - lo[1]);
    let degenerate = diagonal <= f64::EPSILON * (lo[0].abs() + lo[1].abs()).max(1.0);
    if degenerate {
        log::warn!("all vertices coincide; edges are left unbundled");
    } else {
        let radius0 = config.kernel_radius_initial.unwrap_or(diagonal / 10.0);
        let grid = Grid::covering(lo, hi, radius0, config.grid_resolution);
        for k in 0..config.bins.len() {
            let members: Vec<usize> = (0..lines.len()).filter(|&e| bins[e] == k).collect();
            if members.is_empty() {
                continue;
            }
            let mut group: Vec<Vec<[f64; 2]>> =
                members.iter().map(|&e| std::mem::take(&mut lines[e])).collect();
            bundle_bin(&mut group, &grid, radius0, config);
            for (e, line) in members.into_iter().zip(group) {
                lines[e] = line;
            }
        }
    }

    let edges = graph
        .edges
        .iter()
        .zip(lines)
        .zip(bins)
        .map(|((e, polyline), bin_index)| BundledEdge {
            src: e.src,
            dst: e.dst,
            polyline,
            bin_index,
            draw_colour: config.bins.colour(bin_index, scale),
        })
        .collect();
    Ok(Bundling { edges, degenerate })
}
