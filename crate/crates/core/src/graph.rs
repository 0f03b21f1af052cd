//! Immutable simple undirected graphs in CSR form, the degree order used for
//! capping walks, restricted BFS regions and random bipartite splits.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::BufRead;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("source vertex {0} is not in the allowed set")]
    SourceNotAllowed(Vertex),
    #[error("i/o error: {0}")]
    Io(String),
}

/// Simple undirected graph with sorted adjacency lists.
///
/// Vertices are `0..n`. Every edge `{u, v}` is stored twice, once in each
/// endpoint's list.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    /// Error line numbers are 1-based positions in `edges`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for (idx, &(u, v)) in edges.iter().enumerate() {
            let line = idx + 1;
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
        }
        Ok(Self::from_unique_edges(n, edges))
    }

    /// Builds a graph from edges already known to be simple.
    pub(crate) fn from_unique_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0; 2 * edges.len()];
        for &(u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && v < self.vertex_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Subgraph on the same vertex ids keeping only edges between kept vertices.
    pub fn induced(&self, keep: impl Fn(Vertex) -> bool) -> Graph {
        let edges: Vec<_> = self.edges().filter(|&(u, v)| keep(u) && keep(v)).collect();
        Self::from_unique_edges(self.vertex_count(), &edges)
    }

    /// Checks symmetry, sortedness, absence of loops/duplicates and the
    /// degree sum. Returns a description of the first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.vertex_count();
        let mut degree_sum = 0;
        for v in 0..n {
            let adj = self.neighbors(v);
            degree_sum += adj.len();
            for w in adj.windows(2) {
                if w[0] >= w[1] {
                    return Err(format!("adjacency of {v} not strictly ascending"));
                }
            }
            for &w in adj {
                if w >= n {
                    return Err(format!("neighbor {w} of {v} out of range"));
                }
                if w == v {
                    return Err(format!("self-loop at {v}"));
                }
                if !self.has_edge(w, v) {
                    return Err(format!("edge {v}-{w} not symmetric"));
                }
            }
        }
        if degree_sum != 2 * self.edge_count() {
            return Err("degree sum differs from 2m".into());
        }
        Ok(())
    }

    /// Normalized edge-list text: one `u v` line per edge with `u < v`,
    /// ascending, newline-terminated.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

/// Parses the edge-list text format.
///
/// Lines starting with `#` and blank lines are ignored. The first data line is
/// read as an `n m` header when `m` equals the number of remaining data lines
/// and every remaining id is below `n`; otherwise it is an edge.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut next = |what: &str| -> Result<usize, GraphError> {
            let tok = fields.next().ok_or_else(|| GraphError::Parse {
                line: idx + 1,
                message: format!("missing {what}"),
            })?;
            tok.parse::<usize>().map_err(|_| GraphError::Parse {
                line: idx + 1,
                message: format!("invalid vertex id {tok:?}"),
            })
        };
        let u = next("first endpoint")?;
        let v = next("second endpoint")?;
        if fields.next().is_some() {
            return Err(GraphError::Parse {
                line: idx + 1,
                message: "expected exactly two fields".into(),
            });
        }
        rows.push((idx + 1, u, v));
    }

    let mut declared_n = None;
    if let Some(&(_, hn, hm)) = rows.first() {
        let rest = &rows[1..];
        if hm == rest.len() && rest.iter().all(|&(_, u, v)| u < hn && v < hn) {
            declared_n = Some(hn);
            rows.remove(0);
        }
    }

    let n = declared_n.unwrap_or_else(|| rows.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0));
    let mut seen = BTreeSet::new();
    let mut edges = Vec::with_capacity(rows.len());
    for &(line, u, v) in &rows {
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        edges.push((u, v));
    }
    Ok(Graph::from_unique_edges(n, &edges))
}

/// Reads and parses an edge list from any buffered reader.
pub fn load_edge_list(mut reader: impl BufRead) -> Result<Graph, GraphError> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| GraphError::Io(e.to_string()))?;
    parse_edge_list(&text)
}

/// Total order on vertices by `(degree, id)`; a higher rank dominates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeOrder {
    rank: Vec<usize>,
    by_rank: Vec<Vertex>,
}

impl DegreeOrder {
    pub fn new(g: &Graph) -> Self {
        let mut by_rank: Vec<Vertex> = (0..g.vertex_count()).collect();
        by_rank.sort_by_key(|&v| (g.degree(v), v));
        let mut rank = vec![0; by_rank.len()];
        for (r, &v) in by_rank.iter().enumerate() {
            rank[v] = r;
        }
        DegreeOrder { rank, by_rank }
    }

    #[inline]
    pub fn rank(&self, v: Vertex) -> usize {
        self.rank[v]
    }

    #[inline]
    pub fn vertex_at(&self, rank: usize) -> Vertex {
        self.by_rank[rank]
    }

    /// Vertices from lowest to highest rank.
    pub fn ascending(&self) -> &[Vertex] {
        &self.by_rank
    }

    /// `u ≻ v`.
    #[inline]
    pub fn dominates(&self, u: Vertex, v: Vertex) -> bool {
        self.rank[u] > self.rank[v]
    }

    /// Copy of `g` with every vertex renamed to its rank. Adjacency lists of
    /// the result are therefore sorted by rank.
    pub fn relabel(&self, g: &Graph) -> Graph {
        let edges: Vec<_> = g.edges().map(|(u, v)| (self.rank[u], self.rank[v])).collect();
        Graph::from_unique_edges(g.vertex_count(), &edges)
    }
}

pub fn degree_order(g: &Graph) -> DegreeOrder {
    DegreeOrder::new(g)
}

fn sorted_set(vs: impl IntoIterator<Item = Vertex>) -> Vec<Vertex> {
    let mut out: Vec<_> = vs.into_iter().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Number of edges with one endpoint in `a` and the other in `b`. Both slices
/// must be sorted; an edge inside `a ∩ b` is counted once.
pub fn edges_between(g: &Graph, a: &[Vertex], b: &[Vertex]) -> u64 {
    let in_b = |v: Vertex| b.binary_search(&v).is_ok();
    let in_a = |v: Vertex| a.binary_search(&v).is_ok();
    let mut count = 0;
    for &u in a {
        for &v in g.neighbors(u) {
            if in_b(v) {
                // {u, v} is reached from u here and possibly from v as well.
                if in_a(v) && in_b(u) && v < u {
                    continue;
                }
                count += 1;
            }
        }
    }
    count
}

/// A pair of (possibly overlapping) vertex sets with their cached `e(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSetPair {
    a: Vec<Vertex>,
    b: Vec<Vertex>,
    edges: u64,
}

impl VertexSetPair {
    pub fn new(g: &Graph, a: impl IntoIterator<Item = Vertex>, b: impl IntoIterator<Item = Vertex>) -> Self {
        let a = sorted_set(a);
        let b = sorted_set(b);
        let edges = edges_between(g, &a, &b);
        VertexSetPair { a, b, edges }
    }

    pub fn a(&self) -> &[Vertex] {
        &self.a
    }

    pub fn b(&self) -> &[Vertex] {
        &self.b
    }

    pub fn edge_count(&self) -> u64 {
        self.edges
    }
}

/// A subgraph with compact local ids. `vertices[local]` is the original id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub vertices: Vec<Vertex>,
}

impl Subgraph {
    /// Edges in original ids, `(u, v)` with `u < v`, sorted.
    pub fn global_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = self
            .graph
            .edges()
            .map(|(a, b)| {
                let (u, v) = (self.vertices[a], self.vertices[b]);
                (u.min(v), u.max(v))
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn local_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }
}

const UNSEEN: u32 = u32::MAX;

/// Reusable buffers for repeated region extraction on one host graph.
#[derive(Debug)]
pub(crate) struct RegionScratch {
    dist: Vec<u32>,
    local: Vec<u32>,
    touched: Vec<Vertex>,
}

impl RegionScratch {
    pub(crate) fn new(n: usize) -> Self {
        RegionScratch {
            dist: vec![UNSEEN; n],
            local: vec![UNSEEN; n],
            touched: Vec::new(),
        }
    }

    /// Extracts the edges `{u, w}` of the allowed-induced subgraph with
    /// `min(dist(u), dist(w)) <= depth - 1`. When `bound` is set only
    /// neighbors with id `<= bound` are considered, which lets callers with a
    /// rank-relabeled graph stop scanning early.
    ///
    /// Returns the subgraph (source has local id 0) and the number of
    /// adjacency entries inspected.
    pub(crate) fn extract(
        &mut self,
        g: &Graph,
        source: Vertex,
        depth: usize,
        allowed: impl Fn(Vertex) -> bool,
        bound: Option<Vertex>,
    ) -> (Subgraph, u64) {
        let mut scans = 0u64;
        let scan_list = |v: Vertex| -> &[Vertex] {
            let adj = g.neighbors(v);
            match bound {
                Some(b) => &adj[..adj.partition_point(|&w| w <= b)],
                None => adj,
            }
        };

        let mut vertices = vec![source];
        self.dist[source] = 0;
        self.local[source] = 0;
        self.touched.push(source);

        // BFS over vertices at distance <= depth - 1; their neighbors join the region.
        let mut head = 0;
        let mut edges = Vec::new();
        while head < vertices.len() {
            let u = vertices[head];
            head += 1;
            let du = self.dist[u];
            if depth == 0 || du as usize > depth - 1 {
                continue;
            }
            for &w in scan_list(u) {
                scans += 1;
                if !allowed(w) {
                    continue;
                }
                if self.dist[w] == UNSEEN {
                    self.dist[w] = du + 1;
                    self.local[w] = vertices.len() as u32;
                    vertices.push(w);
                    self.touched.push(w);
                }
                let dw = self.dist[w] as usize;
                // Edges between two inner vertices are seen from both sides.
                if dw > depth - 1 || u < w {
                    edges.push((self.local[u] as usize, self.local[w] as usize));
                }
            }
        }

        let graph = Graph::from_unique_edges(vertices.len(), &edges);
        for v in self.touched.drain(..) {
            self.dist[v] = UNSEEN;
            self.local[v] = UNSEEN;
        }
        (Subgraph { graph, vertices }, scans)
    }
}

/// The subgraph `G_i` searched for cycles through `source`: edges of the
/// allowed-induced subgraph having an endpoint within distance `depth - 1`
/// of `source`, with distances measured inside the allowed-induced subgraph.
pub fn restricted_bfs_subgraph(
    g: &Graph,
    source: Vertex,
    depth: usize,
    allowed: impl Fn(Vertex) -> bool,
) -> Result<Subgraph, GraphError> {
    if source >= g.vertex_count() {
        return Err(GraphError::VertexOutOfRange {
            vertex: source,
            n: g.vertex_count(),
        });
    }
    if !allowed(source) {
        return Err(GraphError::SourceNotAllowed(source));
    }
    let mut scratch = RegionScratch::new(g.vertex_count());
    Ok(scratch.extract(g, source, depth, allowed, None).0)
}

/// Result of splitting `A ∪ B` into disjoint sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteSplit {
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
    /// Same vertex ids as the host; only `A×B` edges crossing `left × right`.
    pub graph: Graph,
}

/// `left ⊇ A \ B`, `right ⊇ B \ A`, and each shared vertex goes to one side
/// by a fair coin drawn from `seed` (in ascending vertex order).
pub fn random_bipartite_split(g: &Graph, pair: &VertexSetPair, seed: u64) -> BipartiteSplit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let in_a = |v: Vertex| pair.a.binary_search(&v).is_ok();
    let in_b = |v: Vertex| pair.b.binary_search(&v).is_ok();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for v in sorted_set(pair.a.iter().chain(pair.b.iter()).copied()) {
        match (in_a(v), in_b(v)) {
            (true, false) => left.push(v),
            (false, true) => right.push(v),
            _ => {
                if rng.gen_bool(0.5) {
                    left.push(v)
                } else {
                    right.push(v)
                }
            }
        }
    }
    let on_left = |v: Vertex| left.binary_search(&v).is_ok();
    let on_right = |v: Vertex| right.binary_search(&v).is_ok();
    let kept: Vec<_> = g
        .edges()
        .filter(|&(u, v)| (on_left(u) && on_right(v)) || (on_left(v) && on_right(u)))
        .collect();
    let graph = Graph::from_unique_edges(g.vertex_count(), &kept);
    BipartiteSplit { left, right, graph }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn parses_triangle() {
        let g = parse_edge_list("0 1\n1 2\n2 0").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        g.check_invariants().unwrap();
    }

    #[test]
    fn rejects_duplicates_and_loops() {
        assert!(matches!(parse_edge_list("0 1\n1 0"), Err(GraphError::DuplicateEdge { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 3"), Err(GraphError::SelfLoop { vertex: 3, .. })));
        assert!(matches!(parse_edge_list("0 x"), Err(GraphError::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1 2"), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn header_and_comments() {
        let g = parse_edge_list("# a path with a trailing isolated vertex\n5 2\n0 1\n1 2\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 2));
        // Not a header: three data lines follow but m says 1.
        let g = parse_edge_list("4 1\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn empty_input_is_valid() {
        let g = parse_edge_list("").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (0, 0));
        assert_eq!(g.to_edge_list(), "");
    }

    #[test]
    fn save_normalizes() {
        let g = parse_edge_list("2 0\n# c\n1 0\n2 1\n").unwrap();
        assert_eq!(g.to_edge_list(), "0 1\n0 2\n1 2\n");
    }

    #[test]
    fn degree_order_examples() {
        let tri = generators::cycle(3);
        let ord = degree_order(&tri);
        assert_eq!(ord.ascending(), &[0, 1, 2]);
        assert!(ord.dominates(2, 1) && ord.dominates(1, 0));

        let star = generators::star(3);
        let ord = degree_order(&star);
        assert_eq!(ord.vertex_at(3), 0);

        let path = generators::path(3);
        let ord = degree_order(&path);
        assert_eq!(ord.ascending(), &[0, 2, 1]);
    }

    #[test]
    fn bfs_region_on_hexagon() {
        let c6 = generators::cycle(6);
        let all = restricted_bfs_subgraph(&c6, 5, 3, |_| true).unwrap();
        assert_eq!(all.global_edges(), c6.edges().collect::<Vec<_>>());

        let without2 = restricted_bfs_subgraph(&c6, 5, 3, |v| v != 2).unwrap();
        let edges = without2.global_edges();
        assert!(!edges.contains(&(1, 2)) && !edges.contains(&(2, 3)));
        assert_eq!(edges.len(), 4);

        assert_eq!(
            restricted_bfs_subgraph(&c6, 2, 3, |v| v != 2),
            Err(GraphError::SourceNotAllowed(2))
        );
    }

    #[test]
    fn bfs_region_on_star() {
        let star = generators::star(4);
        let sub = restricted_bfs_subgraph(&star, 0, 1, |_| true).unwrap();
        assert_eq!(sub.global_edges(), vec![(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(sub.vertices[0], 0);
    }

    #[test]
    fn split_of_disjoint_sets_keeps_everything() {
        let g = generators::complete_bipartite(3, 2);
        let pair = VertexSetPair::new(&g, 0..3, 3..5);
        assert_eq!(pair.edge_count(), 6);
        let split = random_bipartite_split(&g, &pair, 11);
        assert_eq!(split.left, vec![0, 1, 2]);
        assert_eq!(split.right, vec![3, 4]);
        assert_eq!(split.graph.edge_count(), 6);
    }

    #[test]
    fn split_of_shared_edge_depends_on_coins() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let pair = VertexSetPair::new(&g, [0, 1], [0, 1]);
        assert_eq!(pair.edge_count(), 1);
        let kept: BTreeSet<usize> = (0..64)
            .map(|s| random_bipartite_split(&g, &pair, s).graph.edge_count())
            .collect();
        assert_eq!(kept, BTreeSet::from([0, 1]));
        for s in 0..16 {
            let split = random_bipartite_split(&g, &pair, s);
            assert_eq!(split.left.len() + split.right.len(), 2);
        }
    }

    #[test]
    fn edges_between_overlapping_sets() {
        let k4 = generators::complete(4);
        // All six edges lie inside A = B = V.
        assert_eq!(edges_between(&k4, &[0, 1, 2, 3], &[0, 1, 2, 3]), 6);
        assert_eq!(edges_between(&k4, &[0, 1], &[1, 2]), 3);
        assert_eq!(edges_between(&k4, &[0], &[1, 2, 3]), 3);
    }
}
