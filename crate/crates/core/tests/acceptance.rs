//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p evencycle --test acceptance`. The process exits
//! nonzero on any unexpected outcome. Criterion 1 is known not to hold for
//! the case programs as stated; its exact failure values are pinned below
//! and any deviation from them is reported as unexpected.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use evencycle::bench::{run_bench, BenchSpec, SparseFamily};
use evencycle::decomposition::{check_chain, layer_decompose};
use evencycle::exact::{format_rational, rational, rational_int};
use evencycle::generators::complete_bipartite;
use evencycle::listing::{default_delta, default_epsilon, detect_c2k, list_c2k, ListingConfig};
use evencycle::lp::{self, CaseId};
use evencycle::oracle::{complete_bipartite_counts, count_2paths, count_4paths, count_capped_k_walks, enumerate_cycles, FOUR_PATH_BUDGET};
use evencycle::supersat::{
    extremal_hypothesis, p2_lower_bound, p4_formula, p4_lower_bound, partial_hypothesis, peel_sets, supersat_experiment, EdgeSpec,
    SupersatParams,
};
use evencycle::{degree_order, exact::Rational};

/// Largest admissible log-log slope of `(work − t)` against `m`.
const SLOPE_LIMIT: f64 = 1.75;
/// Bench sizes `2^12 ..= 2^17` edges, average degree 4, `k = 3`.
const BENCH_EXPONENTS: std::ops::RangeInclusive<u32> = 12..=17;
const BENCH_AVG_DEGREE: u32 = 4;
const BENCH_SEED: u64 = 1;
/// Listing seed used across the corpus.
const LIST_SEED: u64 = 17;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

/// LP verification. Pinned known outcome: the four cases with
/// `D12 = D23 = 3` reach 5/3; all certificates and cross-checks succeed.
fn criterion_1() -> (Verdict, bool) {
    let report = lp::verify_all_cases();
    let over: Vec<CaseId> = report
        .cases
        .iter()
        .filter(|c| c.outcome.optimum.as_ref().is_some_and(|o| *o > lp::target_bound()))
        .map(|c| c.case)
        .collect();
    let regime_33: Vec<CaseId> = CaseId::all().into_iter().filter(|c| c.d12 == 3 && c.d23 == 3).collect();
    let detail = format!(
        "global max {} (bound 8/5), {} of 36 over bound [{}], certificates {}, enumeration {}",
        report.global_max.as_ref().map(format_rational).unwrap_or_else(|| "-".into()),
        over.len(),
        over.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
        if report.all_certified { "verified" } else { "FAILED" },
        if report.all_agree { "agrees" } else { "DISAGREES" },
    );
    let expected = report.all_certified
        && report.all_agree
        && report.global_max == Some(rational(5, 3))
        && over == regime_33
        && !report.pass;
    (verdict(report.pass, detail), report.pass || expected)
}

fn criterion_2() -> Verdict {
    let mut checked = 0;
    for inst in common::corpus() {
        for k in [2, 3] {
            let g = &inst.graph;
            let cfg = ListingConfig::new(k, default_delta(g.edge_count(), k), LIST_SEED);
            let listed = list_c2k(g, &cfg).expect("valid configuration").cycles;
            let expected = enumerate_cycles(g, k);
            if listed != expected {
                return verdict(
                    false,
                    format!("{} k={k}: listed {} cycles, oracle {}", inst.name, listed.len(), expected.len()),
                );
            }
            checked += 1;
        }
    }
    verdict(true, format!("{checked} (instance, k) pairs match the oracle exactly"))
}

fn criterion_3() -> Verdict {
    let mut checked = 0;
    for inst in common::corpus() {
        for k in [2, 3] {
            let g = &inst.graph;
            let d = detect_c2k(g, k, LIST_SEED).expect("valid configuration");
            let exists = !enumerate_cycles(g, k).is_empty();
            let ok = match &d.cycle {
                Some(c) => exists && c.is_cycle_of(g) && c.len() == 2 * k,
                None => !exists,
            };
            if !ok {
                return verdict(
                    false,
                    format!("{} k={k}: detected {:?}, oracle nonempty = {exists}", inst.name, d.cycle),
                );
            }
            checked += 1;
        }
    }
    verdict(true, format!("{checked} (instance, k) pairs agree with the oracle"))
}

fn criterion_4() -> Verdict {
    let mut checked = 0;
    for inst in common::corpus() {
        let g = &inst.graph;
        let order = degree_order(g);
        for k in [2, 3] {
            let d = layer_decompose(g, k, &order).expect("nonempty graph");
            if let Err(e) = d.check_regularity(g) {
                return verdict(false, format!("{} k={k}: {e}", inst.name));
            }
            let capped = count_capped_k_walks(g, k, &order).expect("small instance");
            let chain = check_chain(g, &d, capped).expect("small instance");
            if !(chain.bucket_step_holds && chain.layer_step_holds) {
                return verdict(false, format!("{} k={k}: {chain:?}", inst.name));
            }
            checked += 1;
        }
    }
    verdict(true, format!("{checked} decompositions regular, both walk inequalities hold"))
}

fn criterion_5() -> Verdict {
    let mut p2_checked = 0;
    let mut p4_checked = 0;
    let instances = common::bipartite_corpus();
    for inst in &instances {
        let (g, a, b) = (&inst.graph, &inst.a, &inst.b);
        let peel = peel_sets(g, a, b).expect("instance has edges");
        if !peel.guarantees_hold() {
            return verdict(false, format!("{}: peeling {peel:?}", inst.name));
        }
        let (l, r, m) = (a.len() as u64, b.len() as u64, peel.m);
        if let Some(bound) = p2_lower_bound(l, r, m) {
            let count = count_2paths(g, a, b).expect("disjoint sides");
            if rational_int(count) < bound {
                return verdict(false, format!("{}: 2-paths {count} < {}", inst.name, format_rational(&bound)));
            }
            p2_checked += 1;
        }
        let f = p4_formula(g, a, b).expect("instance has edges");
        if f.factors_positive {
            let count = count_4paths(g, a, b, FOUR_PATH_BUDGET).expect("small instance");
            if rational_int(count) < f.value {
                return verdict(false, format!("{}: 4-paths {count} < {}", inst.name, format_rational(&f.value)));
            }
            p4_checked += 1;
        }
    }
    for side in [100usize, 150] {
        let g = complete_bipartite(side, side);
        let a: Vec<usize> = (0..side).collect();
        let b: Vec<usize> = (side..2 * side).collect();
        let closed = complete_bipartite_counts(side as u64, side as u64);
        let m = (side * side) as u64;
        let p2 = p2_lower_bound(side as u64, side as u64, m).expect("m >= 2R");
        let p4 = p4_lower_bound(&g, &a, &b).expect("edges").expect("m >= 50(L+R)");
        let peel_ok = peel_sets(&g, &a, &b).expect("edges").guarantees_hold();
        if !(peel_ok && p2 <= rational_int(closed.two_paths) && p4 <= rational_int(closed.four_paths)) {
            return verdict(false, format!("K_{{{side},{side}}}: closed-form comparison failed"));
        }
    }
    verdict(
        p2_checked > 0 && p4_checked > 0,
        format!(
            "{} instances peel correctly; 2-path bound checked on {p2_checked}, 4-path bound on {p4_checked}; K100,100 and K150,150 within closed forms",
            instances.len()
        ),
    )
}

fn criterion_6() -> Verdict {
    let spec = BenchSpec {
        family: SparseFamily {
            avg_degree: BENCH_AVG_DEGREE,
        },
        sizes: BENCH_EXPONENTS.map(|e| 1u64 << e).collect(),
        seeds: vec![BENCH_SEED],
        k: 3,
        epsilon: default_epsilon(),
        threads: None,
        timing: false,
    };
    let report = run_bench(&spec).expect("valid spec");
    let slope = report.slope.expect("several sizes");
    let rows: Vec<String> = report
        .rows
        .iter()
        .map(|r| format!("m={} t={} work={}", r.m, r.t, r.total_work))
        .collect();
    verdict(
        slope <= SLOPE_LIMIT,
        format!("slope {slope:.4} (limit {SLOPE_LIMIT}); {}", rows.join(", ")),
    )
}

/// Hypothesis predicates on hand-checkable inputs, then exploratory ratios.
fn criterion_7() -> Verdict {
    let eleven_pow_10 = 11u64.pow(10);
    let two_pow_30 = 1u64 << 30;
    let cases: [(&str, bool, bool); 10] = [
        // 200·(6 + 9^{3/4}) ≈ 2240 > 9
        ("extremal(3,3,9,k=2)", extremal_hypothesis(3, 3, 9, 2), false),
        // threshold 200·(1 + 1 + 1) = 600
        ("extremal(1,1,1001,k=2)", extremal_hypothesis(1, 1, 1001, 2), true),
        // threshold 200·(32 + 256^{3/4}) = 200·96 = 19200, strict
        ("extremal(16,16,19200,k=2)", extremal_hypothesis(16, 16, 19_200, 2), false),
        ("extremal(16,16,19201,k=2)", extremal_hypothesis(16, 16, 19_201, 2), true),
        // threshold 200·(10^4 + 5000^{3/2}) ≈ 7.27·10^7
        ("extremal(5000,5000,2.01e8,k=2)", extremal_hypothesis(5_000, 5_000, 201_000_000, 2), true),
        ("extremal(5000,5000,7.2e7,k=2)", extremal_hypothesis(5_000, 5_000, 72_000_000, 2), false),
        // ⌈log2 2000⌉ = 11: needs m > 11^10 · (2000 + 10^4)
        ("partial(1000,1000,1e5)", partial_hypothesis(1_000, 1_000, 100_000), false),
        ("partial(1000,1000,11^10·12000)", partial_hypothesis(1_000, 1_000, eleven_pow_10 * 12_000), false),
        ("partial(1000,1000,11^10·12000+1)", partial_hypothesis(1_000, 1_000, eleven_pow_10 * 12_000 + 1), true),
        // ⌈log2 250⌉ = 8, 8^10 = 2^30, (125·125)^{2/3} = 625
        ("partial(125,125,2^30·875+1)", partial_hypothesis(125, 125, two_pow_30 * 875 + 1), true),
    ];
    let wrong: Vec<&str> = cases.iter().filter(|(_, got, want)| got != want).map(|(n, _, _)| *n).collect();
    let reports = supersat_experiment(&SupersatParams {
        l: 10,
        r: 10,
        edges: EdgeSpec::Probability(0.5),
        k: 3,
        trials: 3,
        seed: 5,
        budget: u64::MAX,
    })
    .expect("small instances");
    let ratios: Vec<String> = reports
        .iter()
        .map(|r| {
            let ratio: &Rational = r.ratio.as_ref().expect("computed");
            format!("t={} ratio≈{:.4}", r.t.unwrap_or(0), evencycle::exact::to_f64(ratio))
        })
        .collect();
    let no_hypothesis = reports.iter().all(|r| !r.hypothesis_flags.partial_hypothesis);
    verdict(
        wrong.is_empty() && no_hypothesis,
        format!(
            "{} of 10 predicate cases as hand-computed{}; exploratory G(10,10,1/2) C6 ratios: {}",
            10 - wrong.len(),
            if wrong.is_empty() { String::new() } else { format!(" (wrong: {})", wrong.join(", ")) },
            ratios.join(", ")
        ),
    )
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    let mut line = |id: u32, name: &str, start: Instant, v: Verdict, as_expected: bool| {
        println!(
            "criterion {id} [{name}]: {} ({:.1}s) {}",
            if v.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            v.detail
        );
        if !as_expected {
            unexpected += 1;
        }
    };

    let t = Instant::now();
    let (v, expected) = criterion_1();
    line(1, "lp verification", t, v, expected);
    let t = Instant::now();
    let v = criterion_2();
    let ok = v.pass;
    line(2, "listing oracle equivalence", t, v, ok);
    let t = Instant::now();
    let v = criterion_3();
    let ok = v.pass;
    line(3, "detection correctness", t, v, ok);
    let t = Instant::now();
    let v = criterion_4();
    let ok = v.pass;
    line(4, "decomposition inequalities", t, v, ok);
    let t = Instant::now();
    let v = criterion_5();
    let ok = v.pass;
    line(5, "path supersaturation", t, v, ok);
    let t = Instant::now();
    let v = criterion_6();
    let ok = v.pass;
    line(6, "scaling bench", t, v, ok);
    let t = Instant::now();
    let v = criterion_7();
    let ok = v.pass;
    line(7, "desk-scale hypothesis arithmetic", t, v, ok);

    if unexpected == 0 {
        println!("acceptance: all outcomes as expected (criterion 1 fails with the pinned 5/3 optimum)");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected outcome(s)");
        ExitCode::FAILURE
    }
}
