//! Exact verification of the 36 hexagon-case linear programs.
//!
//! Each case fixes which of `|X_1|, |X_2|` and `|X_2|, |X_3|` is larger and
//! which regime the two consecutive layer pairs fall into. The program works
//! in `log_m` scale over `(x1, x2, x3, δ*, δ1, δ2, δ3, τ)` and maximizes the
//! exponent of the layered 3-walk count `x1 + δ1 + δ2 + δ3`. The bound holds
//! when every optimum is at most `8/5`.
//!
//! Programs are solved by a two-phase tableau simplex with Bland's rule over
//! `BigRational`. Optimal outcomes carry a primal witness and dual
//! multipliers that are re-checked by substitution. A second, independent
//! route projects out variables absent from the objective by Fourier–Motzkin
//! elimination and enumerates the vertices of the projected polytope with
//! fraction-free integer elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::format_rational;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub coeffs: Vec<Q>,
    pub relation: Relation,
    pub bound: Q,
}

impl Constraint {
    fn holds_at(&self, x: &[Q]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Le => lhs <= self.bound,
            Relation::Ge => lhs >= self.bound,
        }
    }

    /// Coefficients and bound of the equivalent `<=` row.
    fn as_le(&self) -> (Vec<Q>, Q) {
        match self.relation {
            Relation::Le => (self.coeffs.clone(), self.bound.clone()),
            Relation::Ge => (self.coeffs.iter().map(|c| -c).collect(), -&self.bound),
        }
    }
}

/// `maximize objective · x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub variables: Vec<String>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<Q>,
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

impl LinearProgram {
    pub fn new(variables: &[&str]) -> Self {
        LinearProgram {
            variables: variables.iter().map(|s| s.to_string()).collect(),
            constraints: Vec::new(),
            objective: vec![Q::zero(); variables.len()],
        }
    }

    fn var(&self, name: &str) -> usize {
        self.variables
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"))
    }

    /// Sparse linear form from `(coefficient, variable)` terms.
    pub fn form(&self, terms: &[(Q, &str)]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.variables.len()];
        for (c, name) in terms {
            out[self.var(name)] += c;
        }
        out
    }

    pub fn add(&mut self, label: impl Into<String>, coeffs: Vec<Q>, relation: Relation, bound: Q) {
        assert_eq!(coeffs.len(), self.variables.len());
        self.constraints.push(Constraint {
            label: label.into(),
            coeffs,
            relation,
            bound,
        });
    }

    pub fn is_feasible_point(&self, x: &[Q]) -> bool {
        x.len() == self.variables.len() && x.iter().all(|v| !v.is_negative()) && self.constraints.iter().all(|c| c.holds_at(x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub optimum: Option<Q>,
    pub witness: Option<Vec<Q>>,
    /// One non-negative multiplier per constraint, applied to its `<=` form.
    pub duals: Option<Vec<Q>>,
}

/// Checks the optimality certificate by substitution alone: the witness is
/// feasible, the multipliers are non-negative, `Aᵀy >= c`, and `bᵀy`
/// equals the witness objective.
pub fn verify_certificate(lp: &LinearProgram, outcome: &LpOutcome) -> Result<(), String> {
    let (Some(x), Some(y), Some(opt)) = (&outcome.witness, &outcome.duals, &outcome.optimum) else {
        return Err("outcome carries no certificate".into());
    };
    if !lp.is_feasible_point(x) {
        return Err("witness violates a constraint".into());
    }
    if dot(&lp.objective, x) != *opt {
        return Err("witness objective differs from the reported optimum".into());
    }
    if y.len() != lp.constraints.len() || y.iter().any(|v| v.is_negative()) {
        return Err("dual multipliers missing or negative".into());
    }
    let mut reduced = vec![Q::zero(); lp.variables.len()];
    let mut dual_value = Q::zero();
    for (c, yi) in lp.constraints.iter().zip(y) {
        let (a, b) = c.as_le();
        for (r, aj) in reduced.iter_mut().zip(&a) {
            *r += aj * yi;
        }
        dual_value += b * yi;
    }
    if reduced.iter().zip(&lp.objective).any(|(r, c)| r < c) {
        return Err("dual multipliers do not dominate the objective".into());
    }
    if dual_value != *opt {
        return Err(format!(
            "dual bound {} differs from optimum {}",
            format_rational(&dual_value),
            format_rational(opt)
        ));
    }
    Ok(())
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    /// Columns that may enter the basis.
    enterable: Vec<bool>,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.rows[0].len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · columns` with Bland's rule. Returns false when unbounded.
    fn optimize(&mut self, cost: &[Q]) -> bool {
        loop {
            let rhs = self.rhs();
            let entering = (0..rhs).find(|&j| {
                if !self.enterable[j] || self.basis.contains(&j) {
                    return false;
                }
                let z: Q = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .fold(Q::zero(), |acc, (row, &b)| acc + &cost[b] * &row[j]);
                cost[j] > z
            });
            let Some(j) = entering else { return true };
            let mut leave: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[j].is_positive() {
                    let ratio = &row[rhs] / &row[j];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return false,
            }
        }
    }
}

/// Solves `lp` exactly. Variables are non-negative.
pub fn solve_lp_exact(lp: &LinearProgram) -> LpOutcome {
    let n = lp.variables.len();
    let m = lp.constraints.len();
    let normalized: Vec<(Vec<Q>, Q)> = lp.constraints.iter().map(Constraint::as_le).collect();
    let needs_artificial: Vec<bool> = normalized.iter().map(|(_, b)| b.is_negative()).collect();
    let artificials = needs_artificial.iter().filter(|&&a| a).count();
    let width = n + m + artificials;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = n + m;
    for (i, (a, b)) in normalized.iter().enumerate() {
        let mut row = vec![Q::zero(); width + 1];
        row[..n].clone_from_slice(a);
        row[n + i] = Q::one();
        row[width] = b.clone();
        if needs_artificial[i] {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            row[next_art] = Q::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(n + i);
        }
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis,
        enterable: vec![true; width],
    };

    if artificials > 0 {
        let mut phase1 = vec![Q::zero(); width];
        for c in phase1.iter_mut().skip(n + m) {
            *c = -Q::one();
        }
        t.optimize(&phase1);
        let rhs = t.rhs();
        let infeasibility: Q = t
            .rows
            .iter()
            .zip(&t.basis)
            .filter(|(_, &b)| b >= n + m)
            .fold(Q::zero(), |acc, (row, _)| acc + &row[rhs]);
        if infeasibility.is_positive() {
            return LpOutcome {
                status: LpStatus::Infeasible,
                optimum: None,
                witness: None,
                duals: None,
            };
        }
        // Drive zero-level artificials out; slack columns keep the system
        // full rank, so a replacement column always exists.
        for r in 0..t.rows.len() {
            if t.basis[r] >= n + m {
                let c = (0..n + m)
                    .find(|&c| !t.rows[r][c].is_zero())
                    .expect("constraint rows with slacks have full rank");
                t.pivot(r, c);
            }
        }
        for e in t.enterable.iter_mut().skip(n + m) {
            *e = false;
        }
    }

    let mut cost = vec![Q::zero(); width];
    cost[..n].clone_from_slice(&lp.objective);
    if !t.optimize(&cost) {
        return LpOutcome {
            status: LpStatus::Unbounded,
            optimum: None,
            witness: None,
            duals: None,
        };
    }
    let rhs = t.rhs();
    let mut x = vec![Q::zero(); n];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < n {
            x[b] = row[rhs].clone();
        }
    }
    let optimum = dot(&lp.objective, &x);
    let duals = dual_from_basis(&normalized, n, &t.basis, &cost);
    LpOutcome {
        status: LpStatus::Optimal,
        optimum: Some(optimum),
        witness: Some(x),
        duals: Some(duals),
    }
}

/// Solves `Bᵀ y = c_B` for the basis columns of `[A | I]`.
fn dual_from_basis(normalized: &[(Vec<Q>, Q)], n: usize, basis: &[usize], cost: &[Q]) -> Vec<Q> {
    let m = normalized.len();
    let column = |j: usize, i: usize| -> Q {
        if j < n {
            normalized[i].0[j].clone()
        } else if j - n == i {
            Q::one()
        } else {
            Q::zero()
        }
    };
    // Row r of the system: Σ_i B[i][r] y_i = cost[basis[r]].
    let mut sys: Vec<Vec<Q>> = basis
        .iter()
        .map(|&j| {
            let mut row: Vec<Q> = (0..m).map(|i| column(j, i)).collect();
            row.push(cost[j].clone());
            row
        })
        .collect();
    gauss_solve(&mut sys).expect("an optimal basis is nonsingular")
}

/// Solves a square augmented system in place by Gauss–Jordan elimination.
fn gauss_solve(sys: &mut [Vec<Q>]) -> Option<Vec<Q>> {
    let m = sys.len();
    for col in 0..m {
        let p = (col..m).find(|&r| !sys[r][col].is_zero())?;
        sys.swap(col, p);
        let pv = sys[col][col].clone();
        for v in sys[col].iter_mut() {
            *v /= &pv;
        }
        let prow = sys[col].clone();
        for (r, row) in sys.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(sys.iter().map(|row| row[m].clone()).collect())
}

// ---------------------------------------------------------------------------
// Independent route: Fourier–Motzkin projection + vertex enumeration.

/// Integer row `a · x <= b`, primitive (gcd 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct IntRow {
    a: Vec<i128>,
    b: i128,
}

impl IntRow {
    fn from_rational(a: &[Q], b: &Q) -> IntRow {
        let lcm = a
            .iter()
            .chain(std::iter::once(b))
            .fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let to_int = |v: &Q| -> i128 { (v * Q::from_integer(lcm.clone())).to_integer().to_i128().expect("small coefficients") };
        IntRow {
            a: a.iter().map(to_int).collect(),
            b: to_int(b),
        }
        .primitive()
    }

    fn primitive(mut self) -> IntRow {
        let g = self.a.iter().chain(std::iter::once(&self.b)).fold(0i128, |g, &v| g.gcd(&v));
        if g > 1 {
            self.a.iter_mut().for_each(|v| *v /= g);
            self.b /= g;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerationOutcome {
    /// Best objective over all vertices, with one maximizing vertex in the
    /// projected coordinates.
    Optimal { optimum: Q, vertices: usize },
    Infeasible,
}

/// Eliminates variable `j` from the system. Returns `None` if a
/// contradiction `0 <= negative` appears.
fn fourier_motzkin(rows: &[IntRow], j: usize) -> Option<Vec<IntRow>> {
    let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        match r.a[j].signum() {
            1 => pos.push(r),
            -1 => neg.push(r),
            _ => keep.push(r.clone()),
        }
    }
    for p in &pos {
        for nrow in &neg {
            let (cp, cn) = (p.a[j], -nrow.a[j]);
            let a: Vec<i128> = p.a.iter().zip(&nrow.a).map(|(x, y)| cn * x + cp * y).collect();
            keep.push(IntRow { a, b: cn * p.b + cp * nrow.b }.primitive());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for mut r in keep {
        r.a.remove(j);
        if r.a.iter().all(|&v| v == 0) {
            if r.b < 0 {
                return None;
            }
            continue;
        }
        out.push(r);
    }
    out.sort();
    out.dedup();
    Some(out)
}

/// Solves `A x = b` (square, integer) by fraction-free Gauss–Jordan
/// elimination. On success returns `(det, det·x)`, with `det > 0`.
fn fraction_free_solve(mut m: Vec<Vec<i128>>) -> Option<(i128, Vec<i128>)> {
    let d = m.len();
    let mut prev = 1i128;
    for k in 0..d {
        let p = (k..d).find(|&r| m[r][k] != 0)?;
        m.swap(k, p);
        let pivot_row = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let f = row[k];
            for j in 0..=d {
                if j == k {
                    continue;
                }
                let v = pivot_row[k].checked_mul(row[j])?.checked_sub(f.checked_mul(pivot_row[j])?)?;
                debug_assert_eq!(v % prev, 0, "fraction-free division must be exact");
                row[j] = v / prev;
            }
            row[k] = 0;
        }
        prev = pivot_row[k];
    }
    // Every diagonal entry now equals the determinant (up to the row swaps'
    // sign, which cancels in x = rhs / diag).
    let det = m[0][0];
    let mut xs: Vec<i128> = m.iter().map(|row| row[d]).collect();
    if det < 0 {
        xs.iter_mut().for_each(|v| *v = -*v);
    }
    Some((det.abs(), xs))
}

/// Maximizes the objective over the (bounded) feasible polytope by
/// projecting away variables the objective ignores and testing every
/// `d`-subset of the remaining facets for a feasible vertex.
pub fn enumerate_vertices_optimum(lp: &LinearProgram) -> EnumerationOutcome {
    let n = lp.variables.len();
    let mut rows: Vec<IntRow> = lp
        .constraints
        .iter()
        .map(|c| {
            let (a, b) = c.as_le();
            IntRow::from_rational(&a, &b)
        })
        .collect();
    for j in 0..n {
        let mut a = vec![0i128; n];
        a[j] = -1;
        rows.push(IntRow { a, b: 0 });
    }
    rows.sort();
    rows.dedup();

    let obj_lcm = lp.objective.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let mut objective: Vec<i128> = lp
        .objective
        .iter()
        .map(|v| (v * Q::from_integer(obj_lcm.clone())).to_integer().to_i128().unwrap())
        .collect();

    // Project out objective-free variables while that does not grow the system.
    loop {
        let mut best: Option<(usize, Vec<IntRow>)> = None;
        for j in (0..objective.len()).filter(|&j| objective[j] == 0) {
            let Some(next) = fourier_motzkin(&rows, j) else {
                return EnumerationOutcome::Infeasible;
            };
            if next.len() <= rows.len() && best.as_ref().is_none_or(|(_, b)| next.len() < b.len()) {
                best = Some((j, next));
            }
        }
        match best {
            Some((j, next)) => {
                rows = next;
                objective.remove(j);
            }
            None => break,
        }
    }

    let d = objective.len();
    let r = rows.len();
    if d == 0 {
        return EnumerationOutcome::Optimal {
            optimum: Q::zero(),
            vertices: 1,
        };
    }
    let combos = combinations(r, d);
    let best = combos
        .par_iter()
        .filter_map(|subset| {
            let system: Vec<Vec<i128>> = subset
                .iter()
                .map(|&i| {
                    let mut row = rows[i].a.clone();
                    row.push(rows[i].b);
                    row
                })
                .collect();
            let (det, xs) = fraction_free_solve(system)?;
            // Feasible iff a · xs <= b · det for every row.
            let feasible = rows.iter().all(|row| {
                let lhs: i128 = row.a.iter().zip(&xs).map(|(a, x)| a * x).sum();
                lhs <= row.b * det
            });
            if !feasible {
                return None;
            }
            let value: i128 = objective.iter().zip(&xs).map(|(c, x)| c * x).sum();
            Some(Q::new(BigInt::from(value), BigInt::from(det) * &obj_lcm))
        })
        .fold(
            || (None::<Q>, 0usize),
            |(best, count), v| (Some(best.map_or(v.clone(), |b: Q| b.max(v))), count + 1),
        )
        .reduce(
            || (None, 0),
            |(a, ca), (b, cb)| {
                let best = match (a, b) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    (a, b) => a.or(b),
                };
                (best, ca + cb)
            },
        );
    match best {
        (Some(optimum), vertices) => EnumerationOutcome::Optimal { optimum, vertices },
        (None, _) => EnumerationOutcome::Infeasible,
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------------------
// The case programs.

/// `(B12, B23, D12, D23)`: which layer of each adjacent pair is larger and
/// which of the three edge-count regimes the pair is in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CaseId {
    pub b12: u8,
    pub b23: u8,
    pub d12: u8,
    pub d23: u8,
}

impl CaseId {
    /// All 36 cases, `B12` outermost and `D23` innermost.
    pub fn all() -> Vec<CaseId> {
        let mut out = Vec::with_capacity(36);
        for b12 in 1..=2 {
            for b23 in 2..=3 {
                for d12 in 1..=3 {
                    for d23 in 1..=3 {
                        out.push(CaseId { b12, b23, d12, d23 });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.b12, self.b23, self.d12, self.d23)
    }
}

pub const CASE_VARIABLES: [&str; 8] = ["x1", "x2", "x3", "delta_star", "delta1", "delta2", "delta3", "tau"];

/// The bound every case optimum must respect.
pub fn target_bound() -> Q {
    q(8, 5)
}

/// Upper end of the degree exponents, `Δ(G) <= m^{2/5}`.
pub fn default_degree_cap() -> Q {
    q(2, 5)
}

pub fn build_case_lp(c: CaseId) -> LinearProgram {
    build_case_lp_with_cap(c, &default_degree_cap())
}

/// Case program with a configurable cap on `δ*, δ1, δ2, δ3`.
pub fn build_case_lp_with_cap(c: CaseId, degree_cap: &Q) -> LinearProgram {
    use Relation::{Ge, Le};
    let one = Q::one;
    let zero = Q::zero;
    let mut lp = LinearProgram::new(&CASE_VARIABLES);
    let f = |lp: &LinearProgram, terms: &[(i64, i64, &str)]| -> Vec<Q> {
        let t: Vec<(Q, &str)> = terms.iter().map(|&(n, d, v)| (q(n, d), v)).collect();
        lp.form(&t)
    };

    for x in ["x1", "x2", "x3"] {
        lp.add(format!("{x} >= 0"), f(&lp, &[(1, 1, x)]), Ge, zero());
        lp.add(format!("{x} <= 1"), f(&lp, &[(1, 1, x)]), Le, one());
    }
    for d in ["delta_star", "delta1", "delta2", "delta3"] {
        lp.add(format!("{d} >= 0"), f(&lp, &[(1, 1, d)]), Ge, zero());
        lp.add(format!("{d} <= cap"), f(&lp, &[(1, 1, d)]), Le, degree_cap.clone());
    }
    lp.add("tau >= 0", f(&lp, &[(1, 1, "tau")]), Ge, zero());
    for d in ["delta1", "delta2", "delta3"] {
        lp.add(format!("{d} <= delta_star"), f(&lp, &[(1, 1, d), (-1, 1, "delta_star")]), Le, zero());
    }
    lp.add("delta_star + x1 <= 1", f(&lp, &[(1, 1, "delta_star"), (1, 1, "x1")]), Le, one());
    for (d, x) in [("delta1", "x1"), ("delta2", "x2"), ("delta3", "x3")] {
        lp.add(format!("{d} + {x} <= 1"), f(&lp, &[(1, 1, d), (1, 1, x)]), Le, one());
    }

    let (big12, small12) = if c.b12 == 1 { ("x1", "x2") } else { ("x2", "x1") };
    lp.add(format!("{big12} >= {small12}"), f(&lp, &[(1, 1, big12), (-1, 1, small12)]), Ge, zero());
    let (big23, small23) = if c.b23 == 2 { ("x2", "x3") } else { ("x3", "x2") };
    lp.add(format!("{big23} >= {small23}"), f(&lp, &[(1, 1, big23), (-1, 1, small23)]), Ge, zero());

    regime_block(&mut lp, "12", ("x1", "x2"), "delta1", (big12, small12), c.d12);
    regime_block(&mut lp, "23", ("x2", "x3"), "delta2", (big23, small23), c.d23);

    let walks = f(&lp, &[(1, 1, "x1"), (1, 1, "delta1"), (1, 1, "delta2"), (1, 1, "delta3")]);
    let mut row = walks.clone();
    row[lp.var("tau")] -= Q::one();
    lp.add("x1 + delta1 + delta2 + delta3 >= tau", row, Ge, zero());
    lp.objective = walks;
    lp
}

/// Regime constraints for one adjacent layer pair `(left, right)`:
/// `v1 = left + δ_left`, `v2 = max + min/3`, `v3 = min + max/2`, with the
/// regime's value at least the other two, and for regime 1 the hexagon
/// lower bound `τ >= 6(left + δ_left) − 3(left + right)`.
fn regime_block(lp: &mut LinearProgram, tag: &str, pair: (&str, &str), delta: &str, order: (&str, &str), regime: u8) {
    let (left, right) = pair;
    let (max, min) = order;
    let v = |lp: &LinearProgram, which: u8| -> Vec<Q> {
        match which {
            1 => lp.form(&[(Q::one(), left), (Q::one(), delta)]),
            2 => lp.form(&[(Q::one(), max), (q(1, 3), min)]),
            3 => lp.form(&[(Q::one(), min), (q(1, 2), max)]),
            _ => unreachable!("regimes are 1, 2, 3"),
        }
    };
    let lead = v(lp, regime);
    for other in (1..=3).filter(|&o| o != regime) {
        let row: Vec<Q> = lead.iter().zip(v(lp, other)).map(|(a, b)| a - b).collect();
        lp.add(format!("D{tag}: v{regime} >= v{other}"), row, Relation::Ge, Q::zero());
    }
    if regime == 1 {
        // τ − 6(left + δ) + 3(left + right) >= 0
        let row = lp.form(&[
            (Q::one(), "tau"),
            (q(-3, 1), left),
            (q(-6, 1), delta),
            (q(3, 1), right),
        ]);
        lp.add(format!("D{tag}: tau lower bound"), row, Relation::Ge, Q::zero());
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub case: CaseId,
    pub constraint_count: usize,
    pub outcome: LpOutcome,
    pub certificate_ok: bool,
    pub enumeration: EnumerationOutcome,
    /// Simplex and enumeration agree on status and optimum.
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub cases: Vec<CaseResult>,
    pub global_max: Option<Q>,
    /// Cases whose optimum equals the global maximum.
    pub attaining: Vec<CaseId>,
    pub all_within_bound: bool,
    pub all_certified: bool,
    pub all_agree: bool,
    pub pass: bool,
}

pub fn solve_case(case: CaseId, degree_cap: &Q) -> CaseResult {
    let lp = build_case_lp_with_cap(case, degree_cap);
    let outcome = solve_lp_exact(&lp);
    let certificate_ok = match outcome.status {
        LpStatus::Optimal => verify_certificate(&lp, &outcome).is_ok(),
        LpStatus::Infeasible => true,
        LpStatus::Unbounded => false,
    };
    let enumeration = enumerate_vertices_optimum(&lp);
    let agrees = match (&outcome.status, &enumeration) {
        (LpStatus::Optimal, EnumerationOutcome::Optimal { optimum, .. }) => outcome.optimum.as_ref() == Some(optimum),
        (LpStatus::Infeasible, EnumerationOutcome::Infeasible) => true,
        _ => false,
    };
    CaseResult {
        case,
        constraint_count: lp.constraints.len(),
        outcome,
        certificate_ok,
        enumeration,
        agrees,
    }
}

/// Solves every case with the given degree cap and checks all optima
/// against `8/5`.
pub fn verify_cases_with_cap(degree_cap: &Q) -> VerificationReport {
    let cases: Vec<CaseResult> = CaseId::all()
        .into_par_iter()
        .map(|c| solve_case(c, degree_cap))
        .collect();
    let bound = target_bound();
    let global_max = cases.iter().filter_map(|c| c.outcome.optimum.clone()).max();
    let attaining = cases
        .iter()
        .filter(|c| c.outcome.optimum.is_some() && c.outcome.optimum == global_max)
        .map(|c| c.case)
        .collect();
    let all_within_bound = cases.iter().all(|c| match c.outcome.status {
        LpStatus::Optimal => c.outcome.optimum.as_ref().is_some_and(|o| *o <= bound),
        LpStatus::Infeasible => true,
        LpStatus::Unbounded => false,
    });
    let all_certified = cases.iter().all(|c| c.certificate_ok);
    let all_agree = cases.iter().all(|c| c.agrees);
    VerificationReport {
        pass: all_within_bound && all_certified && all_agree,
        cases,
        global_max,
        attaining,
        all_within_bound,
        all_certified,
        all_agree,
    }
}

pub fn verify_all_cases() -> VerificationReport {
    verify_cases_with_cap(&default_degree_cap())
}
