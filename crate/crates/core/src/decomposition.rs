//! Dyadic bucketing and the layered organization of a graph whose layered
//! walks dominate its capped `k`-walks.
//!
//! The construction picks the degree bucket `V*` carrying the most capped
//! walks, restricts to the subgraph `G'` of vertices with degree at most
//! `d*`, and then peels layers right to left: `X_k` is a degree bucket of
//! `G'`, and each earlier layer collects the vertices whose neighbor count
//! into the next layer falls in one dyadic bucket. Every maximization is
//! exact and ties go to the smallest bucket index.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::exact::floor_pow_ratio;
use crate::graph::{DegreeOrder, Graph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("{x} lies outside the dyadic range [0, {top}]")]
    OutOfRange { x: u64, top: u64 },
    #[error("walk count exceeds the 128-bit range")]
    Overflow,
    #[error("vertex set A is empty")]
    EmptyA,
    #[error("k must be at least {min}, got {k}")]
    InvalidK { k: usize, min: usize },
    #[error("degree window parameter must be positive")]
    InvalidDegree,
}

/// Index of a dyadic bucket: 0 is `{0}`, `j >= 1` is `[2^(j-1), 2^j)`
/// except the last, which is `[n'/2, n']`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DyadicIndex(pub u32);

/// `n'`: the power of two in `[n, 2n)`, never below 2 so that `{1}` is a
/// bucket even for one-vertex graphs.
pub fn dyadic_top(n: u64) -> u64 {
    n.max(2).next_power_of_two()
}

/// Number of nonzero buckets, `log n'`.
pub fn dyadic_bucket_count(n: u64) -> u32 {
    dyadic_top(n).trailing_zeros()
}

pub fn dyadic_index(x: u64, n: u64) -> Result<DyadicIndex, DecompositionError> {
    let top = dyadic_top(n);
    if x > top {
        return Err(DecompositionError::OutOfRange { x, top });
    }
    if x == 0 {
        return Ok(DyadicIndex(0));
    }
    let last = dyadic_bucket_count(n);
    let j = 64 - x.leading_zeros();
    Ok(DyadicIndex(j.min(last)))
}

/// Inclusive bounds of bucket `j`.
pub fn dyadic_bounds(j: DyadicIndex, n: u64) -> (u64, u64) {
    let last = dyadic_bucket_count(n);
    match j.0 {
        0 => (0, 0),
        j if j == last => (dyadic_top(n) / 2, dyadic_top(n)),
        j => (1 << (j - 1), (1 << j) - 1),
    }
}

#[inline]
fn bucket_of(x: u64, n: u64) -> u32 {
    dyadic_index(x, n).expect("counts never exceed n").0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerDecomposition {
    pub k: usize,
    /// Bucket index chosen for `V*`.
    pub star_bucket: u32,
    pub v_star: Vec<Vertex>,
    pub d_star: u64,
    /// Induced subgraph on vertices of degree at most `d*`, same ids as the host.
    #[serde(skip)]
    pub g_prime: Graph,
    pub g_prime_vertices: Vec<Vertex>,
    /// `X_1 .. X_k`.
    pub layers: Vec<Vec<Vertex>>,
    /// `d_1 .. d_k`.
    pub degrees: Vec<u64>,
    /// Bucket indices `i_1 .. i_k` behind `degrees`.
    pub buckets: Vec<u32>,
}

fn checked_sum(acc: u128, x: u128) -> Result<u128, DecompositionError> {
    acc.checked_add(x).ok_or(DecompositionError::Overflow)
}

/// Capped `k`-walks starting at each vertex, by a forward count over walks
/// confined to vertices below the start.
pub fn capped_walks_per_vertex(g: &Graph, k: usize, order: &DegreeOrder) -> Result<Vec<u128>, DecompositionError> {
    let n = g.vertex_count();
    let mut counts = vec![0u128; n];
    let mut acc = vec![0u128; n];
    let mut touched: Vec<Vertex> = Vec::new();
    for s in 0..n {
        let cap = order.rank(s);
        let mut frontier = vec![(s, 1u128)];
        for _ in 0..k {
            for &(x, c) in &frontier {
                for &w in g.neighbors(x) {
                    if order.rank(w) < cap {
                        if acc[w] == 0 {
                            touched.push(w);
                        }
                        acc[w] = checked_sum(acc[w], c)?;
                    }
                }
            }
            frontier = touched.drain(..).map(|w| (w, std::mem::take(&mut acc[w]))).collect();
        }
        counts[s] = frontier.iter().try_fold(0u128, |a, &(_, c)| checked_sum(a, c))?;
    }
    Ok(counts)
}

/// `k`-walks in `h` whose first vertex lies in `start`.
pub fn walks_from(h: &Graph, start: &[Vertex], k: usize) -> Result<u128, DecompositionError> {
    let n = h.vertex_count();
    let mut ending = vec![0u128; n];
    for &v in start {
        ending[v] = 1;
    }
    for _ in 0..k {
        let mut next = vec![0u128; n];
        for (x, slot) in next.iter_mut().enumerate() {
            for &u in h.neighbors(x) {
                *slot = checked_sum(*slot, ending[u])?;
            }
        }
        ending = next;
    }
    ending.into_iter().try_fold(0u128, checked_sum)
}

struct LayerSearch<'a> {
    h: &'a Graph,
    n: u64,
    buckets: u32,
    k: usize,
    v_star_mask: Vec<bool>,
    in_h: Vec<bool>,
    /// Current right-to-left stack of (bucket, layer).
    stack: Vec<(u32, Vec<Vertex>)>,
    best: Option<(u128, Vec<(u32, Vec<Vertex>)>)>,
}

impl LayerSearch<'_> {
    /// `weights[v]` counts walks from `v` through the layers already fixed
    /// (those to the right) and ending in `V(G')`. `current` is the most
    /// recently fixed layer.
    fn descend(&mut self, current: &[Vertex], weights: &[u128]) -> Result<(), DecompositionError> {
        let level = self.k - self.stack.len() + 1; // layer index just fixed
        if level == 1 {
            let total = current.iter().try_fold(0u128, |a, &v| checked_sum(a, weights[v]))?;
            if self.best.as_ref().is_none_or(|(b, _)| total > *b) {
                self.best = Some((total, self.stack.clone()));
            }
            return Ok(());
        }
        let n = self.h.vertex_count();
        let mut in_current = vec![false; n];
        for &v in current {
            in_current[v] = true;
        }
        // Candidates for the next layer to the left.
        let mut count = vec![0u64; n];
        let mut weight = vec![0u128; n];
        let candidates: Vec<Vertex> = (0..n)
            .filter(|&v| if level == 2 { self.v_star_mask[v] } else { self.in_h[v] })
            .collect();
        for &v in &candidates {
            for &y in self.h.neighbors(v) {
                if in_current[y] {
                    count[v] += 1;
                    weight[v] = checked_sum(weight[v], weights[y])?;
                }
            }
        }
        for bucket in 1..=self.buckets {
            let layer: Vec<Vertex> = candidates
                .iter()
                .copied()
                .filter(|&v| count[v] > 0 && bucket_of(count[v], self.n) == bucket)
                .collect();
            self.stack.push((bucket, layer.clone()));
            self.descend(&layer, &weight)?;
            self.stack.pop();
        }
        Ok(())
    }
}

/// Builds the layered decomposition of `g` for walks of length `k`.
pub fn layer_decompose(g: &Graph, k: usize, order: &DegreeOrder) -> Result<LayerDecomposition, DecompositionError> {
    if k < 1 {
        return Err(DecompositionError::InvalidK { k, min: 1 });
    }
    if g.edge_count() == 0 {
        return Err(DecompositionError::EmptyGraph);
    }
    let n = g.vertex_count() as u64;
    let buckets = dyadic_bucket_count(n);

    let per_vertex = capped_walks_per_vertex(g, k, order)?;
    let mut per_bucket = vec![0u128; buckets as usize + 1];
    for v in 0..g.vertex_count() {
        let j = bucket_of(g.degree(v) as u64, n) as usize;
        per_bucket[j] = checked_sum(per_bucket[j], per_vertex[v])?;
    }
    let mut star_bucket = 1;
    for j in 2..=buckets {
        if per_bucket[j as usize] > per_bucket[star_bucket as usize] {
            star_bucket = j;
        }
    }
    let d_star = 1u64 << star_bucket;
    let v_star: Vec<Vertex> = (0..g.vertex_count())
        .filter(|&v| {
            let d = g.degree(v) as u64;
            2 * d >= d_star && d <= d_star
        })
        .collect();
    let in_h: Vec<bool> = (0..g.vertex_count()).map(|v| g.degree(v) as u64 <= d_star).collect();
    let g_prime = g.induced(|v| in_h[v]);
    let g_prime_vertices: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| in_h[v]).collect();
    let mut v_star_mask = vec![false; g.vertex_count()];
    for &v in &v_star {
        v_star_mask[v] = true;
    }

    let mut search = LayerSearch {
        h: &g_prime,
        n,
        buckets,
        k,
        v_star_mask,
        in_h: in_h.clone(),
        stack: Vec::new(),
        best: None,
    };
    // X_k: vertices of G' by their degree in G'. With k = 1 the single
    // layer must also lie in V*.
    let last_candidates: Vec<Vertex> = g_prime_vertices
        .iter()
        .copied()
        .filter(|&v| k > 1 || search.v_star_mask[v])
        .collect();
    let degree_weights: Vec<u128> = (0..g.vertex_count()).map(|v| g_prime.degree(v) as u128).collect();
    for bucket in 1..=buckets {
        let layer: Vec<Vertex> = last_candidates
            .iter()
            .copied()
            .filter(|&v| g_prime.degree(v) > 0 && bucket_of(g_prime.degree(v) as u64, n) == bucket)
            .collect();
        search.stack.push((bucket, layer.clone()));
        search.descend(&layer, &degree_weights)?;
        search.stack.pop();
    }

    let (_, chosen) = search.best.expect("at least one bucket tuple is examined");
    // The stack runs X_k .. X_1.
    let mut layers = Vec::with_capacity(k);
    let mut idx = Vec::with_capacity(k);
    for (bucket, layer) in chosen.into_iter().rev() {
        idx.push(bucket);
        layers.push(layer);
    }
    let top = dyadic_top(n);
    let degrees = idx
        .iter()
        .map(|&b| if b == buckets { top } else { 1u64 << b })
        .collect();
    Ok(LayerDecomposition {
        k,
        star_bucket,
        v_star,
        d_star,
        g_prime,
        g_prime_vertices,
        layers,
        degrees,
        buckets: idx,
    })
}

impl LayerDecomposition {
    /// Every `v ∈ X_i` has between `d_i/2` and `d_i` neighbors in `X_{i+1}`
    /// (with `X_{k+1} = V(G')`), `X_1 ⊆ V*`, and `V*` degrees lie in
    /// `[d*/2, d*]` in the host `g`.
    pub fn check_regularity(&self, g: &Graph) -> Result<(), String> {
        let n = g.vertex_count();
        let mut in_v_star = vec![false; n];
        for &v in &self.v_star {
            let d = g.degree(v) as u64;
            if 2 * d < self.d_star || d > self.d_star {
                return Err(format!("V* vertex {v} has degree {d} outside [d*/2, d*]"));
            }
            in_v_star[v] = true;
        }
        if let Some(&v) = self.layers.first().and_then(|x1| x1.iter().find(|&&v| !in_v_star[v])) {
            return Err(format!("X_1 vertex {v} not in V*"));
        }
        for v in 0..n {
            let in_h = self.g_prime_vertices.binary_search(&v).is_ok();
            if in_h != (g.degree(v) as u64 <= self.d_star) {
                return Err(format!("G' membership of {v} inconsistent with d*"));
            }
        }
        for (i, layer) in self.layers.iter().enumerate() {
            let mut next = vec![false; n];
            match self.layers.get(i + 1) {
                Some(l) => l.iter().for_each(|&v| next[v] = true),
                None => self.g_prime_vertices.iter().for_each(|&v| next[v] = true),
            }
            let d = self.degrees[i];
            for &v in layer {
                let c = self.g_prime.neighbors(v).iter().filter(|&&w| next[w]).count() as u64;
                if 2 * c < d || c > d {
                    return Err(format!("X_{} vertex {v} has {c} neighbors in the next layer, d = {d}", i + 1));
                }
            }
        }
        Ok(())
    }

    /// `|X_1| · Π d_i`.
    pub fn product_bound(&self) -> u128 {
        let x1 = self.layers.first().map_or(0, |l| l.len()) as u128;
        self.degrees.iter().fold(x1, |acc, &d| acc.saturating_mul(d as u128))
    }
}

/// Walks `(x_1, ..., x_{k+1}) ∈ X_1 × ... × X_k × V(G')` along edges of `G'`.
pub fn count_layer_walks(d: &LayerDecomposition) -> Result<u128, DecompositionError> {
    let n = d.g_prime.vertex_count();
    let mut weight = vec![0u128; n];
    for &v in &d.g_prime_vertices {
        weight[v] = 1;
    }
    for layer in d.layers.iter().rev() {
        let mut next = vec![0u128; n];
        for &x in layer {
            next[x] = d.g_prime.neighbors(x).iter().try_fold(0u128, |a, &y| checked_sum(a, weight[y]))?;
        }
        weight = next;
    }
    weight.into_iter().try_fold(0u128, checked_sum)
}

/// The two exact inequalities chaining capped walks to layered walks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub capped_walks: u128,
    pub walks_from_v_star: u128,
    pub layer_walks: u128,
    pub log_n_prime: u32,
    /// `capped ≤ (1 + log n') · walks_from_v_star`
    pub bucket_step_holds: bool,
    /// `walks_from_v_star ≤ (log n')^k · layer_walks`
    pub layer_step_holds: bool,
}

pub fn check_chain(g: &Graph, d: &LayerDecomposition, capped_walks: u128) -> Result<ChainCheck, DecompositionError> {
    let log_n_prime = dyadic_bucket_count(g.vertex_count() as u64);
    let walks_from_v_star = walks_from(&d.g_prime, &d.v_star, d.k)?;
    let layer_walks = count_layer_walks(d)?;
    let lhs1 = (1 + log_n_prime as u128).checked_mul(walks_from_v_star);
    let factor = (log_n_prime as u128).checked_pow(d.k as u32);
    let lhs2 = factor.and_then(|f| f.checked_mul(layer_walks));
    Ok(ChainCheck {
        capped_walks,
        walks_from_v_star,
        layer_walks,
        log_n_prime,
        bucket_step_holds: lhs1.is_none_or(|b| capped_walks <= b),
        layer_step_holds: lhs2.is_none_or(|b| walks_from_v_star <= b),
    })
}

/// `d² |B| / (|A| ⌊m^{2/(k+1)}⌋)` where `B` holds the vertices with between
/// `d/2` and `d` neighbors in `A`. The power of `m` is floored to keep the
/// ratio rational.
pub fn keylem_ratio(g: &Graph, a: &[Vertex], d: u64, k: usize) -> Result<BigRational, DecompositionError> {
    if a.is_empty() {
        return Err(DecompositionError::EmptyA);
    }
    if d == 0 {
        return Err(DecompositionError::InvalidDegree);
    }
    if k < 1 {
        return Err(DecompositionError::InvalidK { k, min: 1 });
    }
    let mut in_a = vec![false; g.vertex_count()];
    for &v in a {
        in_a[v] = true;
    }
    let b = (0..g.vertex_count())
        .filter(|&v| {
            let c = g.neighbors(v).iter().filter(|&&w| in_a[w]).count() as u64;
            2 * c >= d && c <= d
        })
        .count() as u64;
    if b == 0 {
        return Ok(BigRational::from_integer(BigInt::from(0)));
    }
    let scale = floor_pow_ratio(g.edge_count() as u64, 2, k as u32 + 1);
    let num = BigInt::from(d) * BigInt::from(d) * BigInt::from(b);
    let den = BigInt::from(a.len() as u64) * BigInt::from(scale);
    Ok(BigRational::new(num, den))
}
