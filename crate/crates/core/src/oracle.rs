//! Brute-force ground truth for cycles, walks and bipartite paths.
//!
//! Everything here is exhaustive and meant for small instances. Results from
//! the fast routines elsewhere in the crate are checked against these.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{DegreeOrder, Graph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("count exceeds the 128-bit range")]
    Overflow,
    #[error("vertex sets A and B overlap")]
    SetsOverlap,
    #[error("exhaustive search exceeded its work budget of {0} steps")]
    BudgetExceeded(u64),
}

/// A simple cycle stored as the lexicographically smallest of its rotations
/// and reflections, so equal cycles compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle(Vec<Vertex>);

impl Cycle {
    /// Canonicalizes a closed vertex sequence (the closing edge back to the
    /// first vertex is implicit).
    pub fn new(seq: &[Vertex]) -> Self {
        let len = seq.len();
        assert!(len >= 3, "a cycle has at least three vertices");
        let start = (0..len).min_by_key(|&i| seq[i]).unwrap();
        let forward = seq[(start + 1) % len];
        let backward = seq[(start + len - 1) % len];
        let canon: Vec<Vertex> = if forward <= backward {
            (0..len).map(|j| seq[(start + j) % len]).collect()
        } else {
            (0..len).map(|j| seq[(start + len - j) % len]).collect()
        };
        Cycle(canon)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True iff all vertices are distinct and every consecutive pair
    /// (cyclically) is an edge of `g`.
    pub fn is_cycle_of(&self, g: &Graph) -> bool {
        let len = self.0.len();
        let distinct: BTreeSet<_> = self.0.iter().collect();
        distinct.len() == len && (0..len).all(|i| g.has_edge(self.0[i], self.0[(i + 1) % len]))
    }

    pub fn max_by_rank(&self, order: &DegreeOrder) -> Vertex {
        *self.0.iter().max_by_key(|&&v| order.rank(v)).unwrap()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Cycle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// All `2k`-cycles, found from their smallest vertex.
pub fn enumerate_cycles(g: &Graph, k: usize) -> BTreeSet<Cycle> {
    enumerate_cycles_within(g, k, u64::MAX).expect("unbounded budget")
}

/// [`enumerate_cycles`] with a cap on DFS extension steps.
pub fn enumerate_cycles_within(g: &Graph, k: usize, budget: u64) -> Result<BTreeSet<Cycle>, OracleError> {
    assert!(k >= 2);
    let len = 2 * k;
    let mut out = BTreeSet::new();
    let mut steps = 0u64;
    let mut path = Vec::with_capacity(len);
    let mut on_path = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        path.push(s);
        on_path[s] = true;
        extend_from_min(g, len, &mut path, &mut on_path, &mut out, &mut steps, budget)?;
        on_path[s] = false;
        path.pop();
    }
    Ok(out)
}

fn extend_from_min(
    g: &Graph,
    len: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    out: &mut BTreeSet<Cycle>,
    steps: &mut u64,
    budget: u64,
) -> Result<(), OracleError> {
    let s = path[0];
    let last = *path.last().unwrap();
    if path.len() == len {
        // One orientation per cycle: second vertex below the last.
        if path[1] < last && g.has_edge(last, s) {
            out.insert(Cycle::new(path));
        }
        return Ok(());
    }
    for &w in g.neighbors(last) {
        *steps += 1;
        if *steps > budget {
            return Err(OracleError::BudgetExceeded(budget));
        }
        if w <= s || on_path[w] {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        extend_from_min(g, len, path, on_path, out, steps, budget)?;
        on_path[w] = false;
        path.pop();
    }
    Ok(())
}

/// All `2k`-cycles found a second way: each cycle is reported from its
/// lexicographically smallest edge `(u, w)`, as the unique path from `w`
/// back to `u` whose edges are all larger. Returns the cycles in discovery
/// order so callers can also check that nothing is found twice.
pub fn enumerate_cycles_edge_anchored(g: &Graph, k: usize) -> Vec<Cycle> {
    assert!(k >= 2);
    let len = 2 * k;
    let mut found = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    for (u, w) in g.edges() {
        let anchor = (u, w);
        let mut path = vec![w];
        on_path[w] = true;
        on_path[u] = true;
        walk_above_edge(g, len, anchor, &mut path, &mut on_path, &mut found);
        on_path[w] = false;
        on_path[u] = false;
    }
    found
}

fn walk_above_edge(
    g: &Graph,
    len: usize,
    anchor: (Vertex, Vertex),
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    found: &mut Vec<Cycle>,
) {
    let last = *path.last().unwrap();
    let above = |a: Vertex, b: Vertex| (a.min(b), a.max(b)) > anchor;
    if path.len() == len - 1 {
        if above(last, anchor.0) && g.has_edge(last, anchor.0) {
            let mut seq = path.clone();
            seq.push(anchor.0);
            found.push(Cycle::new(&seq));
        }
        return;
    }
    for &x in g.neighbors(last) {
        if on_path[x] || !above(last, x) {
            continue;
        }
        path.push(x);
        on_path[x] = true;
        walk_above_edge(g, len, anchor, path, on_path, found);
        on_path[x] = false;
        path.pop();
    }
}

/// Ordered walks `(x_0, ..., x_k)`: the sum of all entries of `A^k`.
pub fn count_k_walks(g: &Graph, k: usize) -> Result<u128, OracleError> {
    let n = g.vertex_count();
    let mut ending = vec![1u128; n];
    for _ in 0..k {
        let mut next = vec![0u128; n];
        for (x, slot) in next.iter_mut().enumerate() {
            for &u in g.neighbors(x) {
                *slot = slot.checked_add(ending[u]).ok_or(OracleError::Overflow)?;
            }
        }
        ending = next;
    }
    ending.iter().try_fold(0u128, |acc, &c| acc.checked_add(c).ok_or(OracleError::Overflow))
}

/// Capped `k`-walks starting at `start`: every later vertex is below
/// `start` in the degree order. Counted by explicit enumeration.
pub fn count_capped_walks_from(g: &Graph, k: usize, order: &DegreeOrder, start: Vertex) -> Result<u128, OracleError> {
    fn go(g: &Graph, order: &DegreeOrder, cap: usize, at: Vertex, left: usize) -> Result<u128, OracleError> {
        if left == 0 {
            return Ok(1);
        }
        let mut total = 0u128;
        for &w in g.neighbors(at) {
            if order.rank(w) < cap {
                total = total
                    .checked_add(go(g, order, cap, w, left - 1)?)
                    .ok_or(OracleError::Overflow)?;
            }
        }
        Ok(total)
    }
    go(g, order, order.rank(start), start, k)
}

pub fn count_capped_k_walks(g: &Graph, k: usize, order: &DegreeOrder) -> Result<u128, OracleError> {
    (0..g.vertex_count()).try_fold(0u128, |acc, s| {
        acc.checked_add(count_capped_walks_from(g, k, order, s)?)
            .ok_or(OracleError::Overflow)
    })
}

fn membership(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut mark = vec![false; n];
    for &v in set {
        mark[v] = true;
    }
    mark
}

fn check_disjoint(n: usize, a: &[Vertex], b: &[Vertex]) -> Result<(Vec<bool>, Vec<bool>), OracleError> {
    let in_a = membership(n, a);
    let in_b = membership(n, b);
    if b.iter().any(|&v| in_a[v]) {
        return Err(OracleError::SetsOverlap);
    }
    Ok((in_a, in_b))
}

/// Ordered 2-paths `(a1, b, a2)` in `A × B × A` with `a1 != a2`, by direct
/// enumeration of triples.
pub fn count_2paths(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Result<u128, OracleError> {
    let (in_a, _) = check_disjoint(g.vertex_count(), a, b)?;
    let mut count = 0u128;
    for &mid in b {
        for &a1 in g.neighbors(mid).iter().filter(|&&x| in_a[x]) {
            for &a2 in g.neighbors(mid).iter().filter(|&&x| in_a[x]) {
                if a1 != a2 {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// `Σ_{v∈B} deg_A(v)(deg_A(v) − 1)`.
pub fn count_2paths_by_degree(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Result<u128, OracleError> {
    let (in_a, _) = check_disjoint(g.vertex_count(), a, b)?;
    Ok(b.iter()
        .map(|&v| {
            let d = g.neighbors(v).iter().filter(|&&x| in_a[x]).count() as u128;
            d * d.saturating_sub(1)
        })
        .sum())
}

/// Default step cap for [`count_4paths`].
pub const FOUR_PATH_BUDGET: u64 = 200_000_000;

/// Ordered 4-paths `(a1, b1, a2, b2, a3)` in `A × B × A × B × A` with all
/// five vertices distinct, by exhaustive extension. Fails with
/// `BudgetExceeded` once more than `budget` extension steps are taken.
pub fn count_4paths(g: &Graph, a: &[Vertex], b: &[Vertex], budget: u64) -> Result<u128, OracleError> {
    let (in_a, in_b) = check_disjoint(g.vertex_count(), a, b)?;
    let mut steps = 0u64;
    let mut tick = |n: usize| -> Result<(), OracleError> {
        steps += n as u64;
        if steps > budget {
            Err(OracleError::BudgetExceeded(budget))
        } else {
            Ok(())
        }
    };
    let mut count = 0u128;
    for &a1 in a {
        tick(g.degree(a1))?;
        for &b1 in g.neighbors(a1).iter().filter(|&&x| in_b[x]) {
            tick(g.degree(b1))?;
            for &a2 in g.neighbors(b1).iter().filter(|&&x| in_a[x] && x != a1) {
                tick(g.degree(a2))?;
                for &b2 in g.neighbors(a2).iter().filter(|&&x| in_b[x] && x != b1) {
                    tick(g.degree(b2))?;
                    count += g
                        .neighbors(b2)
                        .iter()
                        .filter(|&&x| in_a[x] && x != a1 && x != a2)
                        .count() as u128;
                }
            }
        }
    }
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompleteBipartiteCounts {
    pub two_paths: u128,
    pub four_paths: u128,
    pub hexagons: u128,
}

/// Closed-form path and hexagon counts on `K_{l,r}`; paths are ordered and
/// start on the `l` side.
pub fn complete_bipartite_counts(l: u64, r: u64) -> CompleteBipartiteCounts {
    assert!(l >= 1 && r >= 1);
    let (l, r) = (l as u128, r as u128);
    let falling3 = |x: u128| x * x.saturating_sub(1) * x.saturating_sub(2);
    CompleteBipartiteCounts {
        two_paths: r * l * (l - 1),
        four_paths: l * r * (l - 1) * (r - 1) * l.saturating_sub(2),
        // An ordered (a1 b1 a2 b2 a3 b3) sequence names a hexagon in 3 rotations × 2 directions.
        hexagons: falling3(l) * falling3(r) / 6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::graph::degree_order;

    #[test]
    fn canonical_form() {
        let a = Cycle::new(&[3, 1, 4, 2]);
        assert_eq!(a.vertices(), &[1, 3, 2, 4]);
        assert_eq!(Cycle::new(&[2, 4, 1, 3]), a);
        assert_eq!(Cycle::new(&[1, 4, 2, 3]), a);
        assert_eq!(a.to_string(), "1 3 2 4");
    }

    #[test]
    fn cycle_counts_on_small_graphs() {
        assert_eq!(enumerate_cycles(&cycle(6), 3).len(), 1);
        assert_eq!(enumerate_cycles(&complete(4), 2).len(), 3);
        assert_eq!(enumerate_cycles(&complete_bipartite(3, 3), 3).len(), 6);
        assert!(enumerate_cycles(&cycle(3), 2).is_empty());
        assert!(enumerate_cycles(&cycle(7), 3).is_empty());
        assert!(enumerate_cycles(&Graph::empty(0), 2).is_empty());
    }

    #[test]
    fn budget_guard() {
        assert_eq!(
            enumerate_cycles_within(&complete(8), 3, 100),
            Err(OracleError::BudgetExceeded(100))
        );
    }

    #[test]
    fn walk_counts() {
        let edge = path(2);
        assert_eq!(count_k_walks(&edge, 2), Ok(2));
        assert_eq!(count_k_walks(&cycle(3), 2), Ok(12));
        assert_eq!(count_k_walks(&Graph::empty(5), 3), Ok(0));

        let tri = cycle(3);
        assert_eq!(count_capped_k_walks(&tri, 2, &degree_order(&tri)), Ok(2));
        let st = star(3);
        assert_eq!(count_capped_k_walks(&st, 2, &degree_order(&st)), Ok(0));
        let c4 = cycle(4);
        assert_eq!(count_capped_k_walks(&c4, 2, &degree_order(&c4)), Ok(3));
    }

    #[test]
    fn capped_walks_equal_all_walks_on_star_with_k1() {
        let st = star(5);
        let ord = degree_order(&st);
        // k = 1: only walks leaving the center are capped.
        assert_eq!(count_capped_k_walks(&st, 1, &ord), Ok(5));
        assert_eq!(count_capped_walks_from(&st, 1, &ord, 0), Ok(5));
    }

    #[test]
    fn walk_overflow_is_reported() {
        let g = complete(40);
        assert_eq!(count_k_walks(&g, 30), Err(OracleError::Overflow));
    }

    #[test]
    fn two_paths() {
        let k22 = complete_bipartite(2, 2);
        assert_eq!(count_2paths(&k22, &[0, 1], &[2, 3]), Ok(4));
        assert_eq!(count_2paths(&path(2), &[0], &[1]), Ok(0));
        assert_eq!(count_2paths(&path(3), &[0, 2], &[1]), Ok(2));
        assert_eq!(count_2paths_by_degree(&path(3), &[0, 2], &[1]), Ok(2));
        assert_eq!(count_2paths(&path(3), &[0, 1], &[1]), Err(OracleError::SetsOverlap));
    }

    #[test]
    fn four_paths() {
        let k22 = complete_bipartite(2, 2);
        assert_eq!(count_4paths(&k22, &[0, 1], &[2, 3], FOUR_PATH_BUDGET), Ok(0));
        let k33 = complete_bipartite(3, 3);
        assert_eq!(count_4paths(&k33, &[0, 1, 2], &[3, 4, 5], FOUR_PATH_BUDGET), Ok(36));
        // a0-b0-a1-b1-a2 laid out as 0-1-2-3-4.
        let p = path(5);
        assert_eq!(count_4paths(&p, &[0, 2, 4], &[1, 3], FOUR_PATH_BUDGET), Ok(2));
        assert_eq!(
            count_4paths(&k33, &[0, 1, 2], &[3, 4, 5], 10),
            Err(OracleError::BudgetExceeded(10))
        );
    }

    #[test]
    fn closed_forms() {
        let c = complete_bipartite_counts(2, 2);
        assert_eq!((c.two_paths, c.four_paths, c.hexagons), (4, 0, 0));
        let c = complete_bipartite_counts(3, 3);
        assert_eq!((c.four_paths, c.hexagons), (36, 6));
        assert_eq!(complete_bipartite_counts(3, 2).hexagons, 0);
        assert_eq!(complete_bipartite_counts(1, 1).two_paths, 0);
    }

    #[test]
    fn closed_forms_match_enumeration() {
        for l in 2..=6usize {
            for r in 2..=6usize {
                let g = complete_bipartite(l, r);
                let a: Vec<_> = (0..l).collect();
                let b: Vec<_> = (l..l + r).collect();
                let c = complete_bipartite_counts(l as u64, r as u64);
                assert_eq!(count_2paths(&g, &a, &b).unwrap(), c.two_paths);
                assert_eq!(count_4paths(&g, &a, &b, FOUR_PATH_BUDGET).unwrap(), c.four_paths);
                if l + r <= 9 {
                    assert_eq!(enumerate_cycles(&g, 3).len() as u128, c.hexagons, "K_{{{l},{r}}}");
                }
            }
        }
    }
}
