//! Scaling benchmark driven by the listing work counters.

use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::generators::gnm;
use crate::listing::{default_delta, list_c2k, ListingConfig, ListingError, MAX_K};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BenchError {
    #[error("the size list is empty")]
    NoSizes,
    #[error("invalid benchmark spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Listing(#[from] ListingError),
}

/// Random graphs `G(n, m)` with `n = ⌈2m / avg_degree⌉`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseFamily {
    pub avg_degree: u32,
}

impl SparseFamily {
    pub fn vertices_for(&self, m: u64) -> u64 {
        (2 * m).div_ceil(self.avg_degree as u64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchSpec {
    pub family: SparseFamily,
    pub sizes: Vec<u64>,
    pub seeds: Vec<u64>,
    pub k: usize,
    pub epsilon: BigRational,
    pub threads: Option<usize>,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub m: u64,
    pub n: u64,
    pub seed: u64,
    pub t: u64,
    pub delta: u64,
    pub below_delta_edges: u64,
    pub above_delta_edges: u64,
    pub total_work: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub k: usize,
    pub avg_degree: u32,
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of `ln(work − t)` against `ln m`.
    pub slope: Option<f64>,
}

/// Slope of the least-squares line through `(ln x, ln y)`. Needs two
/// distinct positive `x`; non-positive `y` are clamped to 1.
pub fn loglog_slope(points: &[(u64, u64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, _)| *x > 0)
        .map(|&(x, y)| ((x as f64).ln(), (y.max(1) as f64).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

pub fn run_bench(spec: &BenchSpec) -> Result<BenchReport, BenchError> {
    if spec.sizes.is_empty() {
        return Err(BenchError::NoSizes);
    }
    if spec.seeds.is_empty() {
        return Err(BenchError::Spec("the seed list is empty".into()));
    }
    if spec.family.avg_degree == 0 {
        return Err(BenchError::Spec("average degree must be positive".into()));
    }
    if !(2..=MAX_K).contains(&spec.k) {
        return Err(BenchError::Spec(format!("k must lie in 2..={MAX_K}")));
    }
    let mut rows = Vec::new();
    for &m in &spec.sizes {
        let n = spec.family.vertices_for(m);
        if m > n * n.saturating_sub(1) / 2 {
            return Err(BenchError::Spec(format!("{m} edges do not fit on {n} vertices")));
        }
        for &seed in &spec.seeds {
            let g = gnm(n as usize, m as usize, seed);
            let cfg = ListingConfig {
                epsilon: spec.epsilon.clone(),
                threads: spec.threads,
                ..ListingConfig::new(spec.k, default_delta(g.edge_count(), spec.k), seed)
            };
            let start = Instant::now();
            let out = list_c2k(&g, &cfg)?;
            let elapsed = start.elapsed();
            rows.push(BenchRow {
                m,
                n,
                seed,
                t: out.cycles.len() as u64,
                delta: out.delta,
                below_delta_edges: out.counters.below_delta_edges,
                above_delta_edges: out.counters.above_delta_edges,
                total_work: out.counters.total_work(),
                wall_ms: spec.timing.then_some(elapsed.as_secs_f64() * 1e3),
            });
        }
    }
    let points: Vec<(u64, u64)> = rows.iter().map(|r| (r.m, r.total_work.saturating_sub(r.t))).collect();
    Ok(BenchReport {
        k: spec.k,
        avg_degree: spec.family.avg_degree,
        slope: loglog_slope(&points),
        rows,
    })
}
