//! Color-coding listing of `2k`-cycles.
//!
//! Vertices are processed in ascending degree order. Iteration `i` searches
//! `G_i`, the part of the graph below `v_i` reachable within the BFS
//! region of depth `k`, for cycles through `v_i`; a cycle is therefore found
//! exactly at the iteration of its highest-ranked vertex. Each iteration runs
//! `r` random colorings and lists the colorful cycles through `v_i` with a
//! dynamic program over `(vertex, color set)` states.
//!
//! Before coloring, `G_i` is trimmed to the edges lying on length-`k` walks
//! from `v_i` that end at a vertex reached from two different first hops.
//! Both arcs of any cycle through `v_i` are such walks, so nothing is lost,
//! and iterations whose trimmed graph is empty skip the coloring rounds.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{ceil_log2, ceil_pow_ratio, to_u64_saturating};
use crate::graph::{DegreeOrder, Graph, RegionScratch, Subgraph, Vertex};
use crate::oracle::Cycle;

/// Largest supported half-length; the color-set tables grow as `4^k`.
pub const MAX_K: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ListingError {
    #[error("work budget of {budget} steps exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("k must lie in [2, {MAX_K}], got {0}")]
    InvalidK(usize),
    #[error("failure probability must lie strictly between 0 and 1")]
    InvalidEpsilon,
    #[error("degree threshold must be at least 1")]
    InvalidDelta,
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListingConfig {
    pub k: usize,
    /// Degree threshold splitting the work counters; does not affect output.
    pub delta: u64,
    pub seed: u64,
    /// Per-run failure probability for missing any cycle.
    pub epsilon: BigRational,
    /// Cap on work units (adjacency scan steps).
    pub budget: Option<u64>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl ListingConfig {
    pub fn new(k: usize, delta: u64, seed: u64) -> Self {
        ListingConfig {
            k,
            delta,
            seed,
            epsilon: default_epsilon(),
            budget: None,
            threads: None,
        }
    }

    fn validate(&self) -> Result<(), ListingError> {
        if !(2..=MAX_K).contains(&self.k) {
            return Err(ListingError::InvalidK(self.k));
        }
        if self.delta == 0 {
            return Err(ListingError::InvalidDelta);
        }
        if !self.epsilon.is_positive() || self.epsilon >= BigRational::one() {
            return Err(ListingError::InvalidEpsilon);
        }
        Ok(())
    }
}

/// `1e-9`.
pub fn default_epsilon() -> BigRational {
    BigRational::new(1.into(), 1_000_000_000u64.into())
}

/// `⌈m^{2/(k+1)}⌉`.
pub fn default_delta(m: usize, k: usize) -> u64 {
    to_u64_saturating(&ceil_pow_ratio(m as u64, 2, k as u32 + 1)).max(1)
}

/// Probability that a fixed `2k`-cycle is colorful: `(2k)! / (2k)^{2k}`.
pub fn colorful_probability(k: usize) -> f64 {
    let c = 2 * k;
    (1..=c).map(|i| i as f64 / c as f64).product()
}

/// Colorings per iteration: `⌈(2k ln n + ln(1/ε)) / −ln(1 − p)⌉`. At most
/// `n^{2k}` cycles exist, so by the union bound every one of them is missed
/// with total probability at most `ε`.
pub fn rounds_for(k: usize, n: usize, epsilon: &BigRational) -> u64 {
    let p = colorful_probability(k);
    let ln_inv_eps = ln_rational(&epsilon.recip());
    let ln_n = (n.max(1) as f64).ln();
    let r = (2.0 * k as f64 * ln_n + ln_inv_eps) / -(-p).ln_1p();
    (r.ceil() as u64).max(1)
}

fn ln_rational(x: &BigRational) -> f64 {
    let bits = |v: &num_bigint::BigInt| v.bits() as i64;
    // ln(p/q) computed from scaled mantissas so huge values do not overflow f64.
    let (p, q) = (x.numer(), x.denom());
    let shift_p = (bits(p) - 60).max(0);
    let shift_q = (bits(q) - 60).max(0);
    let pf = (p >> shift_p as usize).to_f64().unwrap_or(f64::NAN);
    let qf = (q >> shift_q as usize).to_f64().unwrap_or(f64::NAN);
    pf.ln() - qf.ln() + (shift_p - shift_q) as f64 * std::f64::consts::LN_2
}

/// Work accounting for one run. One unit is one adjacency entry inspected.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WorkCounters {
    /// `Σ |E(G_i)|` over iterations with `deg(v_i) <= Δ`.
    pub below_delta_edges: u64,
    /// `Σ |E(G_i)|` over iterations with `deg(v_i) > Δ`.
    pub above_delta_edges: u64,
    /// Adjacency entries scanned while extracting the regions `G_i`.
    pub region_scans: u64,
    /// Scans spent trimming regions before coloring.
    pub trim_steps: u64,
    /// Edge relaxations in the colorful-path dynamic programs.
    pub dp_steps: u64,
    /// Steps spent materializing colorful paths.
    pub backtrack_steps: u64,
    /// Coloring rounds actually executed.
    pub rounds_run: u64,
    /// Iterations whose trimmed region was nonempty.
    pub iterations_colored: u64,
    /// Colorful discoveries of a cycle already listed in the same iteration.
    pub duplicate_discoveries: u64,
    /// Distinct cycles listed.
    pub cycles: u64,
}

impl WorkCounters {
    pub fn total_work(&self) -> u64 {
        self.region_scans + self.trim_steps + self.dp_steps + self.backtrack_steps
    }

    fn absorb(&mut self, o: &WorkCounters) {
        self.below_delta_edges += o.below_delta_edges;
        self.above_delta_edges += o.above_delta_edges;
        self.region_scans += o.region_scans;
        self.trim_steps += o.trim_steps;
        self.dp_steps += o.dp_steps;
        self.backtrack_steps += o.backtrack_steps;
        self.rounds_run += o.rounds_run;
        self.iterations_colored += o.iterations_colored;
        self.duplicate_discoveries += o.duplicate_discoveries;
        self.cycles += o.cycles;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListingOutput {
    pub cycles: BTreeSet<Cycle>,
    /// The iteration vertex `v_i` at which each cycle was listed.
    pub found_at: BTreeMap<Cycle, Vertex>,
    /// `|E(G_i)|` indexed by original vertex id.
    pub region_edges: Vec<u64>,
    pub counters: WorkCounters,
    pub rounds_per_iteration: u64,
    pub delta: u64,
}

/// Colorful `2k`-cycles through `v` in `gi` under a fixed coloring.
///
/// `coloring[x]` is the color in `[0, 2k)` of local vertex `x`. Cycles are
/// returned in the local ids of `gi`, canonicalized.
pub fn list_colorful_cycles_through(gi: &Graph, v: Vertex, coloring: &[u8], k: usize) -> BTreeSet<Cycle> {
    assert!((2..=MAX_K).contains(&k), "k out of range");
    assert_eq!(coloring.len(), gi.vertex_count());
    let mut engine = ColorfulEngine::new(k, gi, v);
    let mut out = BTreeSet::new();
    let mut work = WorkCounters::default();
    engine.run(coloring, &mut work, |local| {
        out.insert(Cycle::new(local));
        false
    });
    out
}

/// Fixed-size sets of color masks: bit `S` of an entry is set when a
/// colorful path with color set `S` reaches that state.
struct ColorfulEngine<'a> {
    k: usize,
    g: &'a Graph,
    src: Vertex,
    words: usize,
    /// Per color `c`, the bitmap of masks not containing `c`.
    lacking: Vec<Vec<u64>>,
    /// Layout `[(len * nv + vertex) * words + word]`.
    reach: Vec<u64>,
    active: Vec<Vec<Vertex>>,
}

impl<'a> ColorfulEngine<'a> {
    fn new(k: usize, g: &'a Graph, src: Vertex) -> Self {
        let colors = 2 * k;
        let masks = 1usize << colors;
        let words = masks.div_ceil(64);
        let lacking = (0..colors)
            .map(|c| {
                let mut bits = vec![0u64; words];
                for s in (0..masks).filter(|s| s & (1 << c) == 0) {
                    bits[s / 64] |= 1 << (s % 64);
                }
                bits
            })
            .collect();
        ColorfulEngine {
            k,
            g,
            src,
            words,
            lacking,
            reach: vec![0; (k + 1) * g.vertex_count() * words],
            active: vec![Vec::new(); k + 1],
        }
    }

    #[inline]
    fn slot(&self, len: usize, x: Vertex) -> usize {
        (len * self.g.vertex_count() + x) * self.words
    }

    #[inline]
    fn has(&self, len: usize, x: Vertex, mask: usize) -> bool {
        self.reach[self.slot(len, x) + mask / 64] >> (mask % 64) & 1 == 1
    }

    /// Runs one coloring. `emit` receives each colorful cycle once, as a
    /// local vertex sequence starting at the source; returning `true` stops.
    fn run(&mut self, color: &[u8], work: &mut WorkCounters, mut emit: impl FnMut(&[Vertex]) -> bool) -> bool {
        let k = self.k;
        let w = self.words;
        for len in 0..=k {
            for x in std::mem::take(&mut self.active[len]) {
                let s = self.slot(len, x);
                self.reach[s..s + w].fill(0);
            }
        }
        let cv = color[self.src] as usize;
        let start = self.slot(0, self.src) + (1 << cv) / 64;
        self.reach[start] = 1 << ((1 << cv) % 64);
        self.active[0].push(self.src);

        let mut scratch = vec![0u64; w];
        for len in 0..k {
            let frontier = std::mem::take(&mut self.active[len]);
            for &x in &frontier {
                let from = self.slot(len, x);
                for &y in self.g.neighbors(x) {
                    work.dp_steps += 1;
                    let cy = color[y] as usize;
                    shift_lacking(&self.reach[from..from + w], &self.lacking[cy], 1 << cy, &mut scratch);
                    if scratch.iter().all(|&b| b == 0) {
                        continue;
                    }
                    let to = self.slot(len + 1, y);
                    let fresh = self.reach[to..to + w].iter().all(|&b| b == 0);
                    for (dst, src) in self.reach[to..to + w].iter_mut().zip(&scratch) {
                        *dst |= src;
                    }
                    if fresh {
                        self.active[len + 1].push(y);
                    }
                }
            }
            self.active[len] = frontier;
        }

        let full = (1usize << (2 * k)) - 1;
        let ends = self.active[k].clone();
        for end in ends {
            if end == self.src {
                continue;
            }
            let cw = color[end] as usize;
            let base = self.slot(k, end);
            for word in 0..w {
                let mut bits = self.reach[base + word];
                while bits != 0 {
                    let s1 = word * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let s2 = (full ^ s1) | (1 << cv) | (1 << cw);
                    if s1 >= s2 || !self.has(k, end, s2) {
                        continue;
                    }
                    let first = self.paths(end, s1, color, work);
                    let second = self.paths(end, s2, color, work);
                    for p in &first {
                        for q in &second {
                            // p runs src..end; q reversed closes the cycle.
                            let mut seq = p.clone();
                            seq.extend(q[1..k].iter().rev());
                            if emit(&seq) {
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }

    /// All colorful paths from the source to `end` of length `k` with color
    /// set `mask`, each listed source first.
    fn paths(&self, end: Vertex, mask: usize, color: &[u8], work: &mut WorkCounters) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        let mut stack = vec![end];
        self.back(self.k, end, mask, color, &mut stack, &mut out, work);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn back(
        &self,
        len: usize,
        at: Vertex,
        mask: usize,
        color: &[u8],
        stack: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
        work: &mut WorkCounters,
    ) {
        if len == 0 {
            debug_assert_eq!(at, self.src);
            out.push(stack.iter().rev().copied().collect());
            return;
        }
        let prev_mask = mask ^ (1 << color[at]);
        for &x in self.g.neighbors(at) {
            work.backtrack_steps += 1;
            if self.has(len - 1, x, prev_mask) {
                stack.push(x);
                self.back(len - 1, x, prev_mask, color, stack, out, work);
                stack.pop();
            }
        }
    }
}

/// `out = (src & lacking) << shift` over a little-endian multiword bitmap.
/// Masks lacking the color never carry across the color's bit, so word-local
/// shifts are exact when `shift < 64` and whole-word moves otherwise.
#[inline]
fn shift_lacking(src: &[u64], lacking: &[u64], shift: usize, out: &mut [u64]) {
    if shift < 64 {
        for i in 0..src.len() {
            out[i] = (src[i] & lacking[i]) << shift;
        }
    } else {
        let by = shift / 64;
        out.fill(0);
        for i in 0..src.len() - by {
            out[i + by] = src[i] & lacking[i];
        }
    }
}

const NONE: u32 = u32::MAX;
const MANY: u32 = u32::MAX - 1;

/// Edges of `region` on length-`k` walks from local vertex 0 (never
/// revisiting it) that end at a vertex reachable from two distinct first
/// hops. Returns the trimmed subgraph with the source at local id 0, plus the
/// number of adjacency scans spent.
fn trim_region(region: &Graph, k: usize) -> (Option<Subgraph>, u64) {
    let n = region.vertex_count();
    let mut steps = 0u64;
    let mut tag = vec![vec![NONE; n]; k + 1];
    for &a in region.neighbors(0) {
        tag[1][a] = a as u32;
    }
    for len in 1..k {
        for x in 0..n {
            let t = tag[len][x];
            if t == NONE {
                continue;
            }
            for &y in region.neighbors(x) {
                steps += 1;
                if y == 0 {
                    continue;
                }
                let cur = &mut tag[len + 1][y];
                *cur = match *cur {
                    NONE => t,
                    c if c == t => c,
                    _ => MANY,
                };
            }
        }
    }
    let mut need = vec![vec![false; n]; k + 1];
    let mut any = false;
    for y in 1..n {
        if tag[k][y] == MANY {
            need[k][y] = true;
            any = true;
        }
    }
    if !any {
        return (None, steps);
    }
    let mut kept = HashSet::new();
    for len in (1..=k).rev() {
        for y in 0..n {
            if !need[len][y] {
                continue;
            }
            for &x in region.neighbors(y) {
                steps += 1;
                let ok = if len == 1 { x == 0 } else { x != 0 && tag[len - 1][x] != NONE };
                if ok {
                    need[len - 1][x] = true;
                    kept.insert((x.min(y), x.max(y)));
                }
            }
        }
    }
    let mut local = vec![NONE; n];
    let mut vertices = vec![0];
    local[0] = 0;
    let mut kept: Vec<_> = kept.into_iter().collect();
    kept.sort_unstable();
    for &(a, b) in &kept {
        for v in [a, b] {
            if local[v] == NONE {
                local[v] = vertices.len() as u32;
                vertices.push(v);
            }
        }
    }
    let edges: Vec<_> = kept.iter().map(|&(a, b)| (local[a] as usize, local[b] as usize)).collect();
    let graph = Graph::from_unique_edges(vertices.len(), &edges);
    (Some(Subgraph { graph, vertices }), steps)
}

struct IterationResult {
    vertex: Vertex,
    cycles: Vec<Cycle>,
    counters: WorkCounters,
    region_edges: u64,
}

struct Run<'a> {
    g: &'a Graph,
    order: DegreeOrder,
    ranked: Graph,
    k: usize,
    delta: u64,
    seed: u64,
    rounds: u64,
    budget: Option<u64>,
    spent: AtomicU64,
    over_budget: AtomicBool,
}

impl Run<'_> {
    fn charge(&self, units: u64) -> bool {
        let total = self.spent.fetch_add(units, Ordering::Relaxed) + units;
        if self.budget.is_some_and(|b| total > b) {
            self.over_budget.store(true, Ordering::Relaxed);
        }
        !self.over_budget.load(Ordering::Relaxed)
    }

    fn iteration(&self, rank: usize, scratch: &mut RegionScratch, stop_at_first: bool) -> IterationResult {
        let vertex = self.order.vertex_at(rank);
        let mut counters = WorkCounters::default();
        let mut found = Vec::new();

        let (region, scans) = scratch.extract(&self.ranked, rank, self.k, |_| true, Some(rank));
        let region_edges = region.graph.edge_count() as u64;
        counters.region_scans = scans;
        if self.g.degree(vertex) as u64 <= self.delta {
            counters.below_delta_edges = region_edges;
        } else {
            counters.above_delta_edges = region_edges;
        }
        let (trimmed, trim_steps) = trim_region(&region.graph, self.k);
        counters.trim_steps = trim_steps;
        if !self.charge(scans + trim_steps) {
            return IterationResult { vertex, cycles: found, counters, region_edges };
        }
        let Some(trimmed) = trimmed else {
            return IterationResult { vertex, cycles: found, counters, region_edges };
        };
        counters.iterations_colored = 1;

        // trimmed local -> region local -> rank -> original vertex
        let original: Vec<Vertex> = trimmed
            .vertices
            .iter()
            .map(|&x| self.order.vertex_at(region.vertices[x]))
            .collect();
        let mut engine = ColorfulEngine::new(self.k, &trimmed.graph, 0);
        let mut seen: HashSet<Cycle> = HashSet::new();
        let mut color = vec![0u8; trimmed.graph.vertex_count()];
        let colors = 2 * self.k as u8;
        for round in 0..self.rounds {
            let mut rng = ChaCha8Rng::from_seed(stream_seed(self.seed, rank as u64, round));
            for c in color.iter_mut() {
                *c = rng.gen_range(0..colors);
            }
            let before = counters.total_work();
            counters.rounds_run += 1;
            let mut duplicates = 0;
            let stopped = engine.run(&color, &mut counters, |local| {
                let seq: Vec<Vertex> = local.iter().map(|&x| original[x]).collect();
                let cycle = Cycle::new(&seq);
                assert!(cycle.is_cycle_of(self.g), "colorful search produced a non-cycle {cycle}");
                if seen.insert(cycle.clone()) {
                    found.push(cycle);
                    stop_at_first
                } else {
                    duplicates += 1;
                    false
                }
            });
            counters.duplicate_discoveries += duplicates;
            if !self.charge(counters.total_work() - before) || stopped {
                break;
            }
        }
        counters.cycles = found.len() as u64;
        IterationResult { vertex, cycles: found, counters, region_edges }
    }
}

/// 32-byte ChaCha seed laid out as `(seed, iteration, round, 0)`, giving
/// every coloring its own stream regardless of scheduling.
fn stream_seed(seed: u64, iteration: u64, round: u64) -> [u8; 32] {
    let mut out = [0u8; 32];
    out[..8].copy_from_slice(&seed.to_le_bytes());
    out[8..16].copy_from_slice(&iteration.to_le_bytes());
    out[16..24].copy_from_slice(&round.to_le_bytes());
    out
}

fn new_run<'a>(g: &'a Graph, cfg: &ListingConfig) -> Run<'a> {
    let order = DegreeOrder::new(g);
    let ranked = order.relabel(g);
    Run {
        g,
        ranked,
        order,
        k: cfg.k,
        delta: cfg.delta,
        seed: cfg.seed,
        rounds: rounds_for(cfg.k, g.vertex_count(), &cfg.epsilon),
        budget: cfg.budget,
        spent: AtomicU64::new(0),
        over_budget: AtomicBool::new(false),
    }
}

fn assemble(g: &Graph, run: &Run<'_>, results: Vec<IterationResult>) -> ListingOutput {
    let mut cycles = BTreeSet::new();
    let mut found_at = BTreeMap::new();
    let mut counters = WorkCounters::default();
    let mut region_edges = vec![0; g.vertex_count()];
    for r in results {
        counters.absorb(&r.counters);
        region_edges[r.vertex] = r.region_edges;
        for c in r.cycles {
            found_at.insert(c.clone(), r.vertex);
            cycles.insert(c);
        }
    }
    counters.cycles = cycles.len() as u64;
    ListingOutput {
        cycles,
        found_at,
        region_edges,
        counters,
        rounds_per_iteration: run.rounds,
        delta: run.delta,
    }
}

/// Lists the `2k`-cycles of `g`. Every reported cycle is checked against the
/// adjacency of `g`; each actual cycle is reported with probability at least
/// `1 − ε`. Iterations run in parallel and merge deterministically.
pub fn list_c2k(g: &Graph, cfg: &ListingConfig) -> Result<ListingOutput, ListingError> {
    cfg.validate()?;
    let run = new_run(g, cfg);
    let n = g.vertex_count();
    let work = || -> Vec<IterationResult> {
        (0..n)
            .into_par_iter()
            .map_init(|| RegionScratch::new(n), |scratch, rank| run.iteration(rank, scratch, false))
            .collect()
    };
    let results = match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| ListingError::ThreadPool(e.to_string()))?
            .install(work),
        None => work(),
    };
    if run.over_budget.load(Ordering::Relaxed) {
        return Err(ListingError::BudgetExceeded {
            budget: cfg.budget.unwrap_or(u64::MAX),
        });
    }
    Ok(assemble(g, &run, results))
}

/// `2k`-cycle listing with `Δ = ⌈m^{2/5}⌉`, `k = 3`.
pub fn list_c6(g: &Graph, seed: u64, epsilon: BigRational) -> Result<ListingOutput, ListingError> {
    let cfg = ListingConfig {
        epsilon,
        ..ListingConfig::new(3, to_u64_saturating(&ceil_pow_ratio(g.edge_count() as u64, 2, 5)).max(1), seed)
    };
    list_c2k(g, &cfg)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detection {
    pub cycle: Option<Cycle>,
    /// The work budget ran out before the search finished.
    pub budget_exhausted: bool,
    pub budget: u64,
    pub counters: WorkCounters,
    pub rounds_per_iteration: u64,
    pub delta: u64,
}

/// Detection budget `64 · m^{2k/(k+1)} · (1 + ⌈log n⌉)^{2k+2}` in work units.
pub fn detection_budget(m: usize, n: usize, k: usize) -> u64 {
    let walks = ceil_pow_ratio(m as u64, 2 * k as u32, k as u32 + 1);
    let log = 1 + ceil_log2(n.max(1) as u64) as u64;
    let factor = num_bigint::BigUint::from(log).pow(2 * k as u32 + 2);
    to_u64_saturating(&(walks * factor * 64u32))
}

/// Runs the listing sequentially with `Δ = ⌈m^{2/(k+1)}⌉`, `ε = 1e-9` and the
/// detection budget, stopping at the first cycle.
pub fn detect_c2k(g: &Graph, k: usize, seed: u64) -> Result<Detection, ListingError> {
    let budget = detection_budget(g.edge_count(), g.vertex_count(), k);
    let cfg = ListingConfig {
        budget: Some(budget),
        ..ListingConfig::new(k, default_delta(g.edge_count(), k), seed)
    };
    cfg.validate()?;
    let run = new_run(g, &cfg);
    let mut scratch = RegionScratch::new(g.vertex_count());
    let mut counters = WorkCounters::default();
    let mut cycle = None;
    for rank in 0..g.vertex_count() {
        let r = run.iteration(rank, &mut scratch, true);
        counters.absorb(&r.counters);
        if let Some(c) = r.cycles.into_iter().next() {
            cycle = Some(c);
            break;
        }
        if run.over_budget.load(Ordering::Relaxed) {
            break;
        }
    }
    counters.cycles = cycle.is_some() as u64;
    Ok(Detection {
        budget_exhausted: cycle.is_none() && run.over_budget.load(Ordering::Relaxed),
        cycle,
        budget,
        counters,
        rounds_per_iteration: run.rounds,
        delta: cfg.delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::graph::degree_order;
    use crate::oracle::{count_capped_walks_from, enumerate_cycles};
    use num_traits::Zero;

    fn cfg(k: usize, g: &Graph, seed: u64) -> ListingConfig {
        ListingConfig::new(k, default_delta(g.edge_count(), k), seed)
    }

    #[test]
    fn colorful_probability_values() {
        assert!((colorful_probability(2) - 24.0 / 256.0).abs() < 1e-15);
        assert!((colorful_probability(3) - 720.0 / 46656.0).abs() < 1e-15);
    }

    #[test]
    fn round_count_grows_with_confidence() {
        let loose = rounds_for(3, 40, &BigRational::new(1.into(), 10.into()));
        let tight = rounds_for(3, 40, &default_epsilon());
        assert!(loose < tight);
        // (6 ln 40 + ln 1e9) / -ln(1 - 720/46656) ≈ 2755.62
        assert_eq!(tight, 2756);
        // (4 ln 40 + ln 1e9) / -ln(1 - 24/256) ≈ 360.41
        assert_eq!(rounds_for(2, 40, &default_epsilon()), 361);
    }

    #[test]
    fn rainbow_hexagon() {
        let c6 = cycle(6);
        let colors = [0, 1, 2, 3, 4, 5];
        let found = list_colorful_cycles_through(&c6, 5, &colors, 3);
        assert_eq!(found.into_iter().collect::<Vec<_>>(), vec![Cycle::new(&[0, 1, 2, 3, 4, 5])]);
        let clash = [0, 0, 2, 3, 4, 5];
        assert!(list_colorful_cycles_through(&c6, 5, &clash, 3).is_empty());
    }

    #[test]
    fn colorful_filter_matches_oracle_on_k33() {
        let k33 = complete_bipartite(3, 3);
        let all = enumerate_cycles(&k33, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let colors: Vec<u8> = (0..6).map(|_| rng.gen_range(0..6)).collect();
            for v in 0..6 {
                let expected: BTreeSet<Cycle> = all
                    .iter()
                    .filter(|c| c.vertices().contains(&v))
                    .filter(|c| c.vertices().iter().map(|&x| colors[x]).collect::<BTreeSet<_>>().len() == 6)
                    .cloned()
                    .collect();
                assert_eq!(list_colorful_cycles_through(&k33, v, &colors, 3), expected);
            }
        }
    }

    #[test]
    fn lists_small_named_graphs() {
        let out = list_c2k(&cycle(6), &cfg(3, &cycle(6), 1)).unwrap();
        assert_eq!(out.cycles.len(), 1);
        let k4 = complete(4);
        assert_eq!(list_c2k(&k4, &cfg(2, &k4, 1)).unwrap().cycles, enumerate_cycles(&k4, 2));
        assert!(list_c6(&cycle(7), 0, default_epsilon()).unwrap().cycles.is_empty());
        let k33 = complete_bipartite(3, 3);
        assert_eq!(list_c6(&k33, 7, default_epsilon()).unwrap().cycles.len(), 6);
    }

    #[test]
    fn matches_oracle_on_random_graph() {
        let g = gnm(30, 90, 42);
        let out = list_c2k(&g, &cfg(3, &g, 9)).unwrap();
        assert_eq!(out.cycles, enumerate_cycles(&g, 3));
        assert_eq!(out.counters.cycles as usize, out.cycles.len());
    }

    #[test]
    fn cycles_are_found_at_their_top_vertex() {
        let g = gnm(25, 70, 4);
        let order = degree_order(&g);
        let out = list_c2k(&g, &cfg(2, &g, 2)).unwrap();
        for (cycle, at) in &out.found_at {
            assert_eq!(cycle.max_by_rank(&order), *at);
        }
    }

    #[test]
    fn region_edges_bounded_by_short_capped_walks() {
        let g = gnm(30, 80, 8);
        let order = degree_order(&g);
        let k = 3;
        let out = list_c2k(&g, &cfg(k, &g, 5)).unwrap();
        for v in 0..g.vertex_count() {
            let walks: u128 = (1..=k).map(|j| count_capped_walks_from(&g, j, &order, v).unwrap()).sum();
            assert!(out.region_edges[v] as u128 <= walks, "vertex {v}");
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let g = gnm(35, 110, 77);
        let mut c = cfg(3, &g, 13);
        c.threads = Some(1);
        let one = list_c2k(&g, &c).unwrap();
        c.threads = Some(4);
        let four = list_c2k(&g, &c).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn budget_is_enforced() {
        let g = complete(8);
        let mut c = cfg(3, &g, 1);
        c.budget = Some(50);
        assert_eq!(list_c2k(&g, &c), Err(ListingError::BudgetExceeded { budget: 50 }));
    }

    #[test]
    fn invalid_configs() {
        let g = cycle(6);
        assert_eq!(list_c2k(&g, &cfg(1, &g, 0)), Err(ListingError::InvalidK(1)));
        let mut c = cfg(3, &g, 0);
        c.epsilon = BigRational::one();
        assert_eq!(list_c2k(&g, &c), Err(ListingError::InvalidEpsilon));
        c.epsilon = BigRational::zero();
        assert_eq!(list_c2k(&g, &c), Err(ListingError::InvalidEpsilon));
        let mut c = cfg(3, &g, 0);
        c.delta = 0;
        assert_eq!(list_c2k(&g, &c), Err(ListingError::InvalidDelta));
    }

    #[test]
    fn detection_examples() {
        assert_eq!(detect_c2k(&path(10), 3, 0).unwrap().cycle, None);
        let c6 = detect_c2k(&cycle(6), 3, 0).unwrap();
        assert_eq!(c6.cycle, Some(Cycle::new(&[0, 1, 2, 3, 4, 5])));
        assert_eq!(detect_c2k(&cycle(7), 3, 0).unwrap().cycle, None);
        let empty = detect_c2k(&Graph::empty(0), 2, 0).unwrap();
        assert_eq!(empty.cycle, None);
        assert!(!empty.budget_exhausted);
    }

    #[test]
    fn trimming_keeps_every_cycle_through_the_source() {
        for seed in 0..10 {
            let g = gnm(20, 50, seed);
            for k in 2..=3 {
                for s in 0..g.vertex_count() {
                    let mut scratch = RegionScratch::new(g.vertex_count());
                    let (region, _) = scratch.extract(&g, s, k, |_| true, None);
                    let through: Vec<Cycle> = enumerate_cycles(&g, k)
                        .into_iter()
                        .filter(|c| c.vertices().contains(&s))
                        .collect();
                    let (trimmed, _) = trim_region(&region.graph, k);
                    match trimmed {
                        None => assert!(through.is_empty()),
                        Some(t) => {
                            let edges: BTreeSet<_> = t
                                .global_edges()
                                .into_iter()
                                .map(|(a, b)| {
                                    let (u, v) = (region.vertices[a], region.vertices[b]);
                                    (u.min(v), u.max(v))
                                })
                                .collect();
                            for c in &through {
                                let vs = c.vertices();
                                for i in 0..vs.len() {
                                    let (u, v) = (vs[i], vs[(i + 1) % vs.len()]);
                                    assert!(edges.contains(&(u.min(v), u.max(v))));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
