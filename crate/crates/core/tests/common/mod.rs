#![allow(dead_code)]

use evencycle::generators::{bipartite_gnp, complete, complete_bipartite, cycle, gnm, heawood, petersen};
use evencycle::{Graph, Vertex};

pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

/// 100 seeded random graphs (n <= 40, m <= 120) followed by the named
/// graphs K4, K33, C6, C7, Heawood and Petersen.
pub fn corpus() -> Vec<Instance> {
    let mut out: Vec<Instance> = (0..100u64)
        .map(|i| {
            let n = 8 + (i as usize * 7) % 33;
            let m = (12 + (i as usize * 37) % 109).min(n * (n - 1) / 2);
            Instance {
                name: format!("gnm({n},{m},seed={})", 1000 + i),
                graph: gnm(n, m, 1000 + i),
            }
        })
        .collect();
    for (name, graph) in [
        ("K4", complete(4)),
        ("K33", complete_bipartite(3, 3)),
        ("C6", cycle(6)),
        ("C7", cycle(7)),
        ("Heawood", heawood()),
        ("Petersen", petersen()),
    ] {
        out.push(Instance {
            name: name.to_string(),
            graph,
        });
    }
    out
}

pub struct BipartiteInstance {
    pub name: String,
    pub graph: Graph,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
}

/// Seeded random bipartite graphs with parts `0..l` and `l..l+r`: 40 sparse
/// to dense instances with sides up to 12, then 10 dense 16×16 ones.
pub fn bipartite_corpus() -> Vec<BipartiteInstance> {
    (0..50u64)
        .map(|i| {
            let (l, r, p) = if i < 40 {
                (4 + (i as usize * 3) % 9, 4 + (i as usize * 5) % 9, [0.3, 0.5, 0.7, 0.9][i as usize % 4])
            } else {
                (16, 16, 0.8)
            };
            BipartiteInstance {
                name: format!("bip({l},{r},p={p},seed={})", 2000 + i),
                graph: bipartite_gnp(l, r, p, 2000 + i),
                a: (0..l).collect(),
                b: (l..l + r).collect(),
            }
        })
        .filter(|inst| inst.graph.edge_count() > 0)
        .collect()
}
