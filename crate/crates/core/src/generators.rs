//! Named graphs and seeded random graph families.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_unique_edges(n, &edges)
}

/// `K_{l,r}` with the left side on `0..l` and the right side on `l..l+r`.
pub fn complete_bipartite(l: usize, r: usize) -> Graph {
    let mut edges = Vec::with_capacity(l * r);
    for u in 0..l {
        for v in 0..r {
            edges.push((u, l + v));
        }
    }
    Graph::from_unique_edges(l + r, &edges)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_unique_edges(n, &edges)
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_unique_edges(n, &edges)
}

/// Star with center 0 and leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_unique_edges(leaves + 1, &edges)
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_unique_edges(10, &edges)
}

/// The Heawood graph (the incidence graph of the Fano plane), girth 6.
pub fn heawood() -> Graph {
    let mut edges: Vec<_> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
    for i in (0..14).step_by(2) {
        edges.push((i, (i + 5) % 14));
    }
    Graph::from_unique_edges(14, &edges)
}

fn pair_from_index(n: usize, mut idx: usize) -> (Vertex, Vertex) {
    // Row-major enumeration of pairs u < v.
    let mut u = 0;
    loop {
        let row = n - 1 - u;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
        u += 1;
    }
}

/// Uniform graph with exactly `m` edges on `n` vertices.
pub fn gnm(n: usize, m: usize, seed: u64) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    assert!(m <= total, "requested {m} edges but only {total} pairs exist");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = if 4 * m >= total {
        let mut picked: Vec<usize> = sample(&mut rng, total, m).into_vec();
        picked.sort_unstable();
        picked.into_iter().map(|i| pair_from_index(n, i)).collect()
    } else {
        let mut seen = std::collections::HashSet::with_capacity(m);
        let mut edges = Vec::with_capacity(m);
        while edges.len() < m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && seen.insert((u.min(v), u.max(v))) {
                edges.push((u.min(v), u.max(v)));
            }
        }
        edges
    };
    Graph::from_unique_edges(n, &edges)
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_unique_edges(n, &edges)
}

/// Random bipartite graph, left side `0..l`, right side `l..l+r`, each
/// cross pair present independently with probability `p`.
pub fn bipartite_gnp(l: usize, r: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..l {
        for v in 0..r {
            if rng.gen_bool(p) {
                edges.push((u, l + v));
            }
        }
    }
    Graph::from_unique_edges(l + r, &edges)
}

/// Random bipartite graph with exactly `m` cross edges.
pub fn bipartite_gnm(l: usize, r: usize, m: usize, seed: u64) -> Graph {
    assert!(m <= l * r, "requested {m} edges but only {} cross pairs exist", l * r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<usize> = sample(&mut rng, l * r, m).into_vec();
    picked.sort_unstable();
    let edges: Vec<_> = picked.into_iter().map(|i| (i / r, l + i % r)).collect();
    Graph::from_unique_edges(l + r, &edges)
}
