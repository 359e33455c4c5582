//! Exhaustive reference implementation over plain vectors.
//!
//! Everything here is written from the definitions with double loops and
//! counting, sharing no code with the library.

#![allow(dead_code, clippy::needless_range_loop)]

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Pr,
    Tc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Reliable,
    FalseNbr,
    MissedNbr,
    NonExistent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OEdge {
    pub src: usize,
    pub dst: usize,
    pub penalty: f64,
    pub reverse_exists: bool,
    pub class: Class,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OReport {
    pub pointwise_f: Vec<f64>,
    pub pointwise_m: Vec<f64>,
    pub normalizer: f64,
    pub global_f: f64,
    pub global_m: f64,
}

pub fn distances(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut s = 0.0;
            for k in 0..points[i].len() {
                let t = points[i][k] - points[j][k];
                s += t * t;
            }
            d[i][j] = s.sqrt();
        }
    }
    d
}

/// ρ_ij = 1 + #{k ≠ i, j : d_ik < d_ij, or d_ik = d_ij and k < j}.
pub fn ranks(d: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let n = d.len();
    let mut r = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut count = 1;
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if d[i][k] < d[i][j] || (d[i][k] == d[i][j] && k < j) {
                    count += 1;
                }
            }
            r[i][j] = count;
        }
    }
    r
}

fn inside(rank: usize, kappa: usize) -> bool {
    rank >= 1 && rank <= kappa
}

/// Penalty of `j` as a neighbour of `i` in the embedding; `None` when `j` is
/// not an embedding neighbour.
pub fn false_penalty(model: Model, kappa: usize, rho: usize, r: usize) -> Option<f64> {
    if !inside(r, kappa) {
        return None;
    }
    Some(if inside(rho, kappa) {
        0.0
    } else {
        match model {
            Model::Pr => 1.0,
            Model::Tc => (rho - kappa) as f64,
        }
    })
}

pub fn missed_penalty(model: Model, kappa: usize, rho: usize, r: usize) -> Option<f64> {
    false_penalty(model, kappa, r, rho)
}

/// Largest point-wise sum over every possible κ-subset of data ranks.
pub fn max_pointwise_sum(model: Model, n: usize, kappa: usize) -> f64 {
    let m = n - 1;
    let mut best = 0.0f64;
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != kappa {
            continue;
        }
        let mut s = 0.0;
        for b in 0..m {
            if mask & (1 << b) != 0 {
                let rho = b + 1;
                if rho > kappa {
                    s += match model {
                        Model::Pr => 1.0,
                        Model::Tc => (rho - kappa) as f64,
                    };
                }
            }
        }
        best = best.max(s);
    }
    best
}

/// κ for P/R; the searched maximum for T/C, or 1 when that maximum is 0.
pub fn normalizer(model: Model, n: usize, kappa: usize) -> f64 {
    match model {
        Model::Pr => kappa as f64,
        Model::Tc => {
            let c = max_pointwise_sum(model, n, kappa);
            if c == 0.0 {
                1.0
            } else {
                c
            }
        }
    }
}

pub fn report(model: Model, kappa: usize, rho: &[Vec<usize>], r: &[Vec<usize>]) -> OReport {
    let n = rho.len();
    let mut pf = vec![0.0; n];
    let mut pm = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if let Some(p) = false_penalty(model, kappa, rho[i][j], r[i][j]) {
                pf[i] += p;
            }
            if let Some(p) = missed_penalty(model, kappa, rho[i][j], r[i][j]) {
                pm[i] += p;
            }
        }
    }
    let c = normalizer(model, n, kappa);
    let global = |v: &[f64]| {
        let mut s = 0.0;
        for x in v {
            s += x / c;
        }
        (1.0 - s / n as f64).clamp(0.0, 1.0)
    };
    OReport {
        global_f: global(&pf),
        global_m: global(&pm),
        pointwise_f: pf,
        pointwise_m: pm,
        normalizer: c,
    }
}

fn class(kappa: usize, rho: usize, r: usize) -> Class {
    match (inside(rho, kappa), inside(r, kappa)) {
        (true, true) => Class::Reliable,
        (false, true) => Class::FalseNbr,
        (true, false) => Class::MissedNbr,
        (false, false) => Class::NonExistent,
    }
}

fn edges(
    model: Model,
    kappa: usize,
    rho: &[Vec<usize>],
    r: &[Vec<usize>],
    penalty: fn(Model, usize, usize, usize) -> Option<f64>,
) -> Vec<OEdge> {
    let n = rho.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if let Some(p) = penalty(model, kappa, rho[i][j], r[i][j]) {
                out.push(OEdge {
                    src: i,
                    dst: j,
                    penalty: p,
                    reverse_exists: penalty(model, kappa, rho[j][i], r[j][i]).is_some(),
                    class: class(kappa, rho[i][j], r[i][j]),
                });
            }
        }
    }
    out
}

/// Sorted by (src, dst).
pub fn retrieval_edges(model: Model, kappa: usize, rho: &[Vec<usize>], r: &[Vec<usize>]) -> Vec<OEdge> {
    edges(model, kappa, rho, r, false_penalty)
}

/// Sorted by (src, dst).
pub fn relevance_edges(model: Model, kappa: usize, rho: &[Vec<usize>], r: &[Vec<usize>]) -> Vec<OEdge> {
    edges(model, kappa, rho, r, missed_penalty)
}
