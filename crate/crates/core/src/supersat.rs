//! Supersaturation bounds for bipartite graphs: extremal thresholds, the
//! explicit 2-path and 4-path lower bounds with their peeling sets, and a
//! small experiment harness comparing exact cycle counts against them.
//!
//! Thresholds with fractional exponents are compared by raising both sides
//! to integer powers. Hidden constants are set to 1 and reported as such.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{ceil_log2, rational, rational_int};
use crate::generators::{bipartite_gnm, bipartite_gnp};
use crate::graph::{edges_between, Graph, Vertex};
use crate::oracle::{enumerate_cycles_within, OracleError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SupersatError {
    #[error("no edges between the two vertex sets")]
    NoEdges,
    #[error("vertex sets overlap")]
    SetsOverlap,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("cycle enumeration exceeded its budget of {0} steps")]
    BudgetExceeded(u64),
}

impl From<OracleError> for SupersatError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded(b) => SupersatError::BudgetExceeded(b),
            OracleError::SetsOverlap => SupersatError::SetsOverlap,
            other => SupersatError::Precondition(other.to_string()),
        }
    }
}

/// `m > 100k(L + R + (LR)^{(k+1)/(2k)})`, so a bipartite graph with parts of
/// sizes `L, R` and `m` edges must contain a `C_{2k}`.
pub fn extremal_hypothesis(l: u64, r: u64, m: u64, k: u32) -> bool {
    assert!(l >= 1 && r >= 1 && k >= 1);
    let c = BigInt::from(100u64 * k as u64);
    let residual = BigInt::from(m) - &c * (BigInt::from(l) + BigInt::from(r));
    if residual <= BigInt::zero() {
        return false;
    }
    // residual > c (LR)^{(k+1)/(2k)}  <=>  residual^{2k} > c^{2k} (LR)^{k+1}
    let lhs = Pow::pow(&residual, 2 * k);
    let rhs = Pow::pow(&c, 2 * k) * Pow::pow(BigInt::from(l) * BigInt::from(r), k + 1);
    lhs > rhs
}

/// Floating-point evaluation of the extremal threshold, for reports only.
pub fn extremal_threshold_f64(l: u64, r: u64, k: u32) -> f64 {
    let (l, r) = (l as f64, r as f64);
    100.0 * k as f64 * (l + r + (l * r).powf((k as f64 + 1.0) / (2.0 * k as f64)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Peeling {
    pub b1: Vec<Vertex>,
    pub a1: Vec<Vertex>,
    pub b2: Vec<Vertex>,
    pub m: u64,
    pub e_a_b1: u64,
    pub e_a1_b1: u64,
    pub e_a1_b2: u64,
}

impl Peeling {
    /// `e(A,B1) >= m/2`, `e(A1,B1) >= m/4`, `e(A1,B2) >= m/8`.
    pub fn guarantees_hold(&self) -> bool {
        2 * self.e_a_b1 >= self.m && 4 * self.e_a1_b1 >= self.m && 8 * self.e_a1_b2 >= self.m
    }
}

fn sorted(v: &[Vertex]) -> Vec<Vertex> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn disjoint(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_err())
}

fn degree_into(g: &Graph, v: Vertex, set: &[Vertex]) -> u64 {
    g.neighbors(v).iter().filter(|w| set.binary_search(w).is_ok()).count() as u64
}

/// Keeps the vertices of `from` whose degree into `into` is at least
/// `edges / (2 |size|)`, compared without division.
fn heavy(g: &Graph, from: &[Vertex], into: &[Vertex], edges: u64, size: usize) -> Vec<Vertex> {
    from.iter()
        .copied()
        .filter(|&v| 2 * size as u64 * degree_into(g, v, into) >= edges)
        .collect()
}

/// Peels `B ⊇ B1 ⊇ B2` and `A ⊇ A1` by keeping vertices of at least half
/// the average degree at each step.
pub fn peel_sets(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Result<Peeling, SupersatError> {
    let (a, b) = (sorted(a), sorted(b));
    if !disjoint(&a, &b) {
        return Err(SupersatError::SetsOverlap);
    }
    let m = edges_between(g, &a, &b);
    if m == 0 {
        return Err(SupersatError::NoEdges);
    }
    let b1 = heavy(g, &b, &a, m, b.len());
    let e_a_b1 = edges_between(g, &a, &b1);
    let a1 = heavy(g, &a, &b1, e_a_b1, a.len());
    let e_a1_b1 = edges_between(g, &a1, &b1);
    let b2 = heavy(g, &b1, &a1, e_a1_b1, b1.len());
    let e_a1_b2 = edges_between(g, &a1, &b2);
    Ok(Peeling {
        b1,
        a1,
        b2,
        m,
        e_a_b1,
        e_a1_b1,
        e_a1_b2,
    })
}

/// `m²/(2R)` when `m >= 2R`.
pub fn p2_lower_bound(_l: u64, r: u64, m: u64) -> Option<BigRational> {
    assert!(r >= 1);
    (m >= 2 * r).then(|| rational(BigInt::from(m) * BigInt::from(m), BigInt::from(2 * r)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P4Formula {
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub value: BigRational,
    pub factors_positive: bool,
    pub m: u64,
    pub a_size: usize,
    pub b_size: usize,
    pub b1_size: usize,
}

/// `(m/8)(m/(8|B1|) − 1)(m/(4|A|) − 1)(m/(2|B|) − 2)` with the peeled `B1`.
pub fn p4_formula(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Result<P4Formula, SupersatError> {
    let peeling = peel_sets(g, a, b)?;
    let (a_size, b_size) = (sorted(a).len(), sorted(b).len());
    let m = peeling.m;
    let mq = rational_int(m);
    let factors = [
        &mq / rational_int(8),
        &mq / rational_int(8 * peeling.b1.len() as u64) - rational_int(1),
        &mq / rational_int(4 * a_size as u64) - rational_int(1),
        &mq / rational_int(2 * b_size as u64) - rational_int(2),
    ];
    let factors_positive = factors.iter().all(|f| f > &BigRational::zero());
    let value = factors.iter().fold(rational_int(1), |acc, f| acc * f);
    Ok(P4Formula {
        value,
        factors_positive,
        m,
        a_size,
        b_size,
        b1_size: peeling.b1.len(),
    })
}

/// The 4-path lower bound, or `None` when `m < 50(|A| + |B|)`.
pub fn p4_lower_bound(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Result<Option<BigRational>, SupersatError> {
    let f = p4_formula(g, a, b)?;
    Ok((f.m >= 50 * (f.a_size + f.b_size) as u64).then_some(f.value))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinTerm {
    One,
    RightCubedOverL,
    SquaresOverLSquared,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialBound {
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub d_l: BigRational,
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub d_r: BigRational,
    pub min_term: MinTerm,
    /// Right-hand side with the hidden constant set to 1.
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub value: BigRational,
    pub hidden_constant: u32,
    /// `m / ⌈log(L+R)⌉^{10} > L + R + (LR)^{2/3}`.
    pub hypothesis: bool,
}

fn log_factor(n: u64) -> BigInt {
    BigInt::from(ceil_log2(n.max(2)))
}

/// `m/⌈log2(L+R)⌉^{10} > L + R + (LR)^{2/3}`, exactly.
pub fn partial_hypothesis(l: u64, r: u64, m: u64) -> bool {
    let c: BigInt = Pow::pow(log_factor(l + r), 10u32);
    let residual = BigInt::from(m) - &c * BigInt::from(l + r);
    if residual <= BigInt::zero() {
        return false;
    }
    // residual > c (LR)^{2/3}  <=>  residual³ > c³ (LR)²
    Pow::pow(&residual, 3u32) > Pow::pow(&c, 3u32) * Pow::pow(BigInt::from(l) * BigInt::from(r), 2u32)
}

/// Evaluates `d_R³ d_L³ · min(1, d_R³/L, d_L² d_R²/L²) / ⌈log2 n⌉^{70}` with
/// `d_L = m/L`, `d_R = m/R`.
pub fn partialsupersat_rhs(l: u64, r: u64, m: u64, n: u64) -> Result<PartialBound, SupersatError> {
    if l > r {
        return Err(SupersatError::Precondition(format!("L = {l} exceeds R = {r}")));
    }
    if l < 100 {
        return Err(SupersatError::Precondition(format!("L = {l} is below 100")));
    }
    Ok(partial_formula(l, r, m, n))
}

fn partial_formula(l: u64, r: u64, m: u64, n: u64) -> PartialBound {
    let d_l = rational(m, l);
    let d_r = rational(m, r);
    let lq = rational_int(l);
    let terms = [
        (MinTerm::One, rational_int(1)),
        (MinTerm::RightCubedOverL, Pow::pow(&d_r, 3u32) / &lq),
        (
            MinTerm::SquaresOverLSquared,
            Pow::pow(&d_l, 2u32) * Pow::pow(&d_r, 2u32) / (&lq * &lq),
        ),
    ];
    let (min_term, min_value) = terms
        .into_iter()
        .reduce(|best, t| if t.1 < best.1 { t } else { best })
        .expect("three terms");
    let logs: BigInt = Pow::pow(log_factor(n), 70u32);
    let value = Pow::pow(&d_r, 3u32) * Pow::pow(&d_l, 3u32) * min_value / BigRational::from_integer(logs);
    PartialBound {
        d_l,
        d_r,
        min_term,
        value,
        hidden_constant: 1,
        hypothesis: partial_hypothesis(l, r, m),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HypothesisFlags {
    pub extremal: bool,
    pub p2: bool,
    pub p4: bool,
    /// `L >= 100` and `L <= R` after ordering the sides.
    pub partial_precondition: bool,
    pub partial_hypothesis: bool,
}

impl fmt::Display for HypothesisFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let held: Vec<&str> = [
            (self.extremal, "extremal"),
            (self.p2, "p2"),
            (self.p4, "p4"),
            (self.partial_precondition, "partial_precondition"),
            (self.partial_hypothesis, "partial_hypothesis"),
        ]
        .iter()
        .filter(|(on, _)| *on)
        .map(|(_, name)| *name)
        .collect();
        if held.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&held.join("+"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupersatReport {
    pub l: u64,
    pub r: u64,
    pub m: u64,
    pub k: u32,
    pub n: u64,
    pub seed: u64,
    /// Exact `C_{2k}` count, when enumeration finished within budget.
    pub t: Option<u64>,
    /// `t · L^k R^k / m^{2k}`; 0 on an edgeless instance.
    #[serde(serialize_with = "crate::exact::serialize_opt_rational")]
    pub ratio: Option<BigRational>,
    /// `m^{2k} / (L^k R^k)`.
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub bound_conjecture: BigRational,
    /// Partial-supersaturation right-hand side with the hidden constant set to 1.
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub bound_partial: BigRational,
    pub hypothesis_flags: HypothesisFlags,
}

/// Report for a bipartite graph whose parts are `a` and `b`.
pub fn supersat_report(g: &Graph, a: &[Vertex], b: &[Vertex], k: u32, seed: u64, budget: u64) -> Result<SupersatReport, SupersatError> {
    let (a, b) = (sorted(a), sorted(b));
    if !disjoint(&a, &b) {
        return Err(SupersatError::SetsOverlap);
    }
    let (l, r) = (a.len() as u64, b.len() as u64);
    if l == 0 || r == 0 {
        return Err(SupersatError::Precondition("both sides must be nonempty".into()));
    }
    let m = edges_between(g, &a, &b);
    let n = g.vertex_count() as u64;
    let cycles = enumerate_cycles_within(g, k as usize, budget)?;
    let t = cycles.len() as u64;
    let lr_k = Pow::pow(BigUint::from(l) * BigUint::from(r), k);
    let m_2k = Pow::pow(BigUint::from(m), 2 * k);
    let ratio = if m == 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::from(t) * BigInt::from(lr_k.clone()), BigInt::from(m_2k.clone()))
    };
    let bound_conjecture = BigRational::new(BigInt::from(m_2k), BigInt::from(lr_k));
    let (small, large) = (l.min(r), l.max(r));
    let partial = partial_formula(small, large, m, n);
    let hypothesis_flags = HypothesisFlags {
        extremal: extremal_hypothesis(l, r, m, k),
        p2: m >= 2 * r,
        p4: m >= 50 * (l + r),
        partial_precondition: small >= 100,
        partial_hypothesis: partial.hypothesis,
    };
    Ok(SupersatReport {
        l,
        r,
        m,
        k,
        n,
        seed,
        t: Some(t),
        ratio: Some(ratio),
        bound_conjecture,
        bound_partial: partial.value,
        hypothesis_flags,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EdgeSpec {
    Probability(f64),
    Count(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SupersatParams {
    pub l: usize,
    pub r: usize,
    pub edges: EdgeSpec,
    pub k: u32,
    pub trials: usize,
    pub seed: u64,
    pub budget: u64,
}

/// Per-trial seed; trial 0 uses the base seed unchanged.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_add((trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Left side is `0..l`, right side `l..l+r`.
pub fn supersat_experiment(params: &SupersatParams) -> Result<Vec<SupersatReport>, SupersatError> {
    let (l, r) = (params.l, params.r);
    if l == 0 || r == 0 {
        return Err(SupersatError::Precondition("both sides must be nonempty".into()));
    }
    if let EdgeSpec::Count(m) = params.edges {
        if m > l * r {
            return Err(SupersatError::Precondition(format!("{m} edges exceed the {} available pairs", l * r)));
        }
    }
    if let EdgeSpec::Probability(p) = params.edges {
        if !(0.0..=1.0).contains(&p) {
            return Err(SupersatError::Precondition(format!("edge probability {p} outside [0, 1]")));
        }
    }
    let a: Vec<Vertex> = (0..l).collect();
    let b: Vec<Vertex> = (l..l + r).collect();
    (0..params.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = trial_seed(params.seed, trial);
            let g = match params.edges {
                EdgeSpec::Probability(p) => bipartite_gnp(l, r, p, seed),
                EdgeSpec::Count(m) => bipartite_gnm(l, r, m, seed),
            };
            supersat_report(&g, &a, &b, params.k, seed, params.budget)
        })
        .collect()
}
