use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use evencycle::bench::{run_bench, BenchError, BenchSpec, SparseFamily};
use evencycle::decomposition::{capped_walks_per_vertex, check_chain, layer_decompose, ChainCheck, LayerDecomposition};
use evencycle::exact::{format_rational, parse_rational};
use evencycle::listing::{default_delta, default_epsilon, detect_c2k, list_c2k, ListingConfig, ListingError, WorkCounters};
use evencycle::lp::{self, CaseResult, EnumerationOutcome, LpStatus};
use evencycle::oracle::{enumerate_cycles_within, OracleError};
use evencycle::supersat::{supersat_experiment, EdgeSpec, SupersatError, SupersatParams, SupersatReport};
use evencycle::{degree_order, parse_edge_list, Cycle, Graph};

use crate::report::{sha256_hex, Failure, Output, Parameters, RunReport, EXIT_INTERNAL, EXIT_UNVERIFIED};
use crate::InputArgs;

pub struct Context {
    pub timing: bool,
}

/// Cap on cycle-enumeration steps for `supersat` when none is given.
const SUPERSAT_DEFAULT_BUDGET: u64 = 50_000_000;

fn load(path: &Path) -> Result<(Graph, String), Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| Failure::input(format!("{}: not UTF-8 text", path.display())))?;
    let g = parse_edge_list(text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok((g, sha256_hex(&bytes)))
}

fn listing_failure(e: ListingError) -> Failure {
    match e {
        ListingError::BudgetExceeded { .. } => Failure::budget(e.to_string()),
        ListingError::ThreadPool(_) => Failure::internal(e.to_string()),
        _ => Failure::input(e.to_string()),
    }
}

fn parse_epsilon(text: Option<&str>) -> Result<evencycle::exact::Rational, Failure> {
    match text {
        None => Ok(default_epsilon()),
        Some(t) => parse_rational(t).ok_or_else(|| Failure::input(format!("cannot parse epsilon {t:?}"))),
    }
}

fn verify_cycles<'a>(g: &Graph, cycles: impl IntoIterator<Item = &'a Cycle>) -> Result<(), Failure> {
    for c in cycles {
        if !c.is_cycle_of(g) {
            return Err(Failure::internal(format!("reported cycle {c} is not a cycle of the input")));
        }
    }
    Ok(())
}

fn elapsed_ms(ctx: &Context, start: Instant) -> Option<f64> {
    ctx.timing.then(|| start.elapsed().as_secs_f64() * 1e3)
}

#[derive(Serialize)]
struct DetectResult {
    found: bool,
    cycle: Option<Cycle>,
    budget_exhausted: bool,
    budget: u64,
    rounds_per_iteration: u64,
}

pub fn detect(ctx: &Context, args: &InputArgs) -> Result<Output, Failure> {
    let start = Instant::now();
    let (g, digest) = load(&args.input)?;
    let d = detect_c2k(&g, args.k, args.seed).map_err(listing_failure)?;
    verify_cycles(&g, d.cycle.iter())?;
    let text = match &d.cycle {
        Some(c) => format!("found\n{c}\n"),
        None if d.budget_exhausted => "none (work budget exhausted)\n".to_string(),
        None => "none\n".to_string(),
    };
    let report = RunReport {
        command: "detect",
        input_digest: Some(digest),
        parameters: Parameters {
            k: Some(args.k),
            delta: Some(d.delta),
            seed: Some(args.seed),
            epsilon: Some(format_rational(&default_epsilon())),
            budget: Some(d.budget),
        },
        results: DetectResult {
            found: d.cycle.is_some(),
            cycle: d.cycle.clone(),
            budget_exhausted: d.budget_exhausted,
            budget: d.budget,
            rounds_per_iteration: d.rounds_per_iteration,
        },
        counters: Some(d.counters),
        wall_ms: elapsed_ms(ctx, start),
    };
    Output::new(&report, text)
}

#[derive(Serialize)]
struct ListResult {
    method: &'static str,
    cycle_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    rounds_per_iteration: Option<u64>,
    cycles: Vec<Cycle>,
}

#[derive(Serialize)]
struct CycleRow {
    index: usize,
    vertices: String,
}

pub fn list(
    ctx: &Context,
    args: &InputArgs,
    epsilon: Option<&str>,
    delta: Option<u64>,
    budget: Option<u64>,
    oracle: bool,
) -> Result<Output, Failure> {
    let start = Instant::now();
    let (g, digest) = load(&args.input)?;
    let (cycles, counters, rounds, parameters) = if oracle {
        if args.k < 2 {
            return Err(Failure::input(format!("k must be at least 2, got {}", args.k)));
        }
        let cycles = enumerate_cycles_within(&g, args.k, budget.unwrap_or(u64::MAX)).map_err(|e| match e {
            OracleError::BudgetExceeded(_) => Failure::budget(e.to_string()),
            other => Failure::internal(other.to_string()),
        })?;
        let parameters = Parameters {
            k: Some(args.k),
            budget,
            ..Default::default()
        };
        (cycles, None, None, parameters)
    } else {
        let eps = parse_epsilon(epsilon)?;
        let cfg = ListingConfig {
            epsilon: eps.clone(),
            budget,
            ..ListingConfig::new(args.k, delta.unwrap_or_else(|| default_delta(g.edge_count(), args.k)), args.seed)
        };
        let out = list_c2k(&g, &cfg).map_err(listing_failure)?;
        let parameters = Parameters {
            k: Some(args.k),
            delta: Some(out.delta),
            seed: Some(args.seed),
            epsilon: Some(format_rational(&eps)),
            budget,
        };
        (out.cycles, Some(out.counters), Some(out.rounds_per_iteration), parameters)
    };
    verify_cycles(&g, &cycles)?;
    let cycles: Vec<Cycle> = cycles.into_iter().collect();
    let mut text = format!("{} cycles\n", cycles.len());
    for c in &cycles {
        writeln!(text, "{c}").unwrap();
    }
    let rows: Vec<CycleRow> = cycles
        .iter()
        .enumerate()
        .map(|(index, c)| CycleRow {
            index,
            vertices: c.to_string(),
        })
        .collect();
    let report: RunReport<ListResult, WorkCounters> = RunReport {
        command: "list",
        input_digest: Some(digest),
        parameters,
        results: ListResult {
            method: if oracle { "exhaustive" } else { "color-coding" },
            cycle_count: cycles.len(),
            rounds_per_iteration: rounds,
            cycles,
        },
        counters,
        wall_ms: elapsed_ms(ctx, start),
    };
    Output::new(&report, text)?.with_csv(rows)
}

fn parse_list(text: &str, what: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let value = match s.split_once('^') {
                Some((base, exp)) => base
                    .parse::<u64>()
                    .ok()
                    .zip(exp.parse::<u32>().ok())
                    .and_then(|(b, e)| b.checked_pow(e)),
                None => s.parse::<u64>().ok(),
            };
            value.ok_or_else(|| Failure::input(format!("cannot parse {what} entry {s:?}")))
        })
        .collect()
}

pub fn bench(ctx: &Context, sizes: &str, seeds: &str, avg_degree: u32, k: usize, epsilon: Option<&str>) -> Result<Output, Failure> {
    let spec = BenchSpec {
        family: SparseFamily { avg_degree },
        sizes: parse_list(sizes, "size")?,
        seeds: parse_list(seeds, "seed")?,
        k,
        epsilon: parse_epsilon(epsilon)?,
        threads: None,
        timing: ctx.timing,
    };
    let report = run_bench(&spec).map_err(|e| match e {
        BenchError::Listing(l) => listing_failure(l),
        other => Failure::input(other.to_string()),
    })?;
    let mut text = String::from("m\tn\tseed\tt\tdelta\tbelow_delta\tabove_delta\ttotal_work\n");
    for r in &report.rows {
        writeln!(
            text,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.m, r.n, r.seed, r.t, r.delta, r.below_delta_edges, r.above_delta_edges, r.total_work
        )
        .unwrap();
    }
    match report.slope {
        Some(s) => writeln!(text, "slope(work - t vs m): {s:.4}").unwrap(),
        None => text.push_str("slope(work - t vs m): n/a\n"),
    }
    let rows = report.rows.clone();
    let run = RunReport::<_, ()> {
        command: "bench",
        input_digest: None,
        parameters: Parameters {
            k: Some(k),
            epsilon: Some(format_rational(&spec.epsilon)),
            ..Default::default()
        },
        results: report,
        counters: None,
        wall_ms: None,
    };
    Output::new(&run, text)?.with_csv(rows)
}

#[derive(Serialize)]
struct DecomposeResult<'a> {
    decomposition: &'a LayerDecomposition,
    chain: ChainCheck,
}

pub fn decompose(ctx: &Context, input: &Path, k: usize) -> Result<Output, Failure> {
    let start = Instant::now();
    let (g, digest) = load(input)?;
    let order = degree_order(&g);
    let d = layer_decompose(&g, k, &order).map_err(|e| Failure::input(e.to_string()))?;
    d.check_regularity(&g).map_err(Failure::internal)?;
    let capped = capped_walks_per_vertex(&g, k, &order)
        .map_err(|e| Failure::input(e.to_string()))?
        .into_iter()
        .sum();
    let chain = check_chain(&g, &d, capped).map_err(|e| Failure::input(e.to_string()))?;
    if !(chain.bucket_step_holds && chain.layer_step_holds) {
        return Err(Failure::internal(format!("walk-count chain violated: {chain:?}")));
    }
    let mut text = String::new();
    writeln!(text, "k: {k}").unwrap();
    writeln!(text, "star bucket: {} (d* = {}, |V*| = {})", d.star_bucket, d.d_star, d.v_star.len()).unwrap();
    writeln!(text, "G' vertices: {}", d.g_prime_vertices.len()).unwrap();
    for (i, (layer, deg)) in d.layers.iter().zip(&d.degrees).enumerate() {
        writeln!(text, "layer {}: |X| = {}, d = {}", i + 1, layer.len(), deg).unwrap();
    }
    writeln!(text, "capped walks: {}", chain.capped_walks).unwrap();
    writeln!(text, "walks from V*: {}", chain.walks_from_v_star).unwrap();
    writeln!(text, "layer walks: {}", chain.layer_walks).unwrap();
    writeln!(text, "log n': {}", chain.log_n_prime).unwrap();
    writeln!(text, "bucket step: holds").unwrap();
    writeln!(text, "layer step: holds").unwrap();
    let report = RunReport::<_, ()> {
        command: "decompose",
        input_digest: Some(digest),
        parameters: Parameters {
            k: Some(k),
            ..Default::default()
        },
        results: DecomposeResult { decomposition: &d, chain },
        counters: None,
        wall_ms: elapsed_ms(ctx, start),
    };
    Output::new(&report, text)
}

#[derive(Serialize)]
struct SupersatRow {
    #[serde(rename = "L")]
    l: u64,
    #[serde(rename = "R")]
    r: u64,
    m: u64,
    k: u32,
    n: u64,
    t: Option<u64>,
    ratio: Option<String>,
    bound_partial: String,
    hypothesis_flags: String,
}

impl From<&SupersatReport> for SupersatRow {
    fn from(r: &SupersatReport) -> Self {
        SupersatRow {
            l: r.l,
            r: r.r,
            m: r.m,
            k: r.k,
            n: r.n,
            t: r.t,
            ratio: r.ratio.as_ref().map(format_rational),
            bound_partial: format_rational(&r.bound_partial),
            hypothesis_flags: r.hypothesis_flags.to_string(),
        }
    }
}

#[derive(Serialize)]
struct SupersatResult {
    /// Hidden constants in the bounds are taken to be 1.
    constants: &'static str,
    reports: Vec<SupersatReport>,
}

#[allow(clippy::too_many_arguments)]
pub fn supersat(
    ctx: &Context,
    left: usize,
    right: usize,
    p: Option<f64>,
    edges: Option<usize>,
    k: u32,
    trials: usize,
    seed: u64,
    budget: Option<u64>,
) -> Result<Output, Failure> {
    let start = Instant::now();
    let edges = match (p, edges) {
        (Some(p), None) => EdgeSpec::Probability(p),
        (None, Some(m)) => EdgeSpec::Count(m),
        _ => return Err(Failure::input("give exactly one of --p and --edges")),
    };
    if k < 2 {
        return Err(Failure::input(format!("k must be at least 2, got {k}")));
    }
    let budget = budget.unwrap_or(SUPERSAT_DEFAULT_BUDGET);
    let params = SupersatParams {
        l: left,
        r: right,
        edges,
        k,
        trials,
        seed,
        budget,
    };
    let reports = supersat_experiment(&params).map_err(|e| match e {
        SupersatError::BudgetExceeded(_) => Failure::budget(e.to_string()),
        other => Failure::input(other.to_string()),
    })?;
    let rows: Vec<SupersatRow> = reports.iter().map(SupersatRow::from).collect();
    let mut text = String::from("L\tR\tm\tk\tn\tt\tratio\tbound_partial\thypothesis_flags\n");
    for r in &rows {
        writeln!(
            text,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.l,
            r.r,
            r.m,
            r.k,
            r.n,
            r.t.map_or("-".to_string(), |t| t.to_string()),
            r.ratio.as_deref().unwrap_or("-"),
            r.bound_partial,
            r.hypothesis_flags
        )
        .unwrap();
    }
    text.push_str("bounds take every hidden constant as 1\n");
    let report = RunReport::<_, ()> {
        command: "supersat",
        input_digest: None,
        parameters: Parameters {
            k: Some(k as usize),
            seed: Some(seed),
            budget: Some(budget),
            ..Default::default()
        },
        results: SupersatResult {
            constants: "hidden constants taken as 1",
            reports,
        },
        counters: None,
        wall_ms: elapsed_ms(ctx, start),
    };
    Output::new(&report, text)?.with_csv(rows)
}

#[derive(Serialize)]
struct CaseRow {
    case: String,
    status: LpStatus,
    optimum: Option<String>,
    constraints: usize,
    certificate_verified: bool,
    enumeration_optimum: Option<String>,
    agrees: bool,
    within_bound: bool,
}

#[derive(Serialize)]
struct CaseDetail {
    #[serde(flatten)]
    row: CaseRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    duals: Option<Vec<String>>,
}

#[derive(Serialize)]
struct LpResult {
    bound: String,
    degree_cap: String,
    global_max: Option<String>,
    attaining: Vec<String>,
    over_bound: Vec<String>,
    all_within_bound: bool,
    all_certified: bool,
    all_agree: bool,
    pass: bool,
    cases: Vec<CaseDetail>,
}

fn case_row(c: &CaseResult) -> CaseRow {
    let bound = lp::target_bound();
    CaseRow {
        case: c.case.to_string(),
        status: c.outcome.status,
        optimum: c.outcome.optimum.as_ref().map(format_rational),
        constraints: c.constraint_count,
        certificate_verified: c.certificate_ok,
        enumeration_optimum: match &c.enumeration {
            EnumerationOutcome::Optimal { optimum, .. } => Some(format_rational(optimum)),
            EnumerationOutcome::Infeasible => None,
        },
        agrees: c.agrees,
        within_bound: c.outcome.optimum.as_ref().is_none_or(|o| *o <= bound),
    }
}

pub fn lp_verify(ctx: &Context, degree_cap: Option<&str>, certificates: bool) -> Result<Output, Failure> {
    let start = Instant::now();
    let cap = match degree_cap {
        None => lp::default_degree_cap(),
        Some(t) => parse_rational(t).ok_or_else(|| Failure::input(format!("cannot parse degree cap {t:?}")))?,
    };
    let report = lp::verify_cases_with_cap(&cap);
    let rows: Vec<CaseRow> = report.cases.iter().map(case_row).collect();
    let strings = |v: &Option<Vec<evencycle::exact::Rational>>| -> Option<Vec<String>> { v.as_ref().map(|v| v.iter().map(format_rational).collect()) };

    let mut text = String::new();
    for (c, row) in report.cases.iter().zip(&rows) {
        writeln!(
            text,
            "case {}  {:?}  optimum {}  rows {}  certificate {}  enumeration {}{}",
            row.case,
            row.status,
            row.optimum.as_deref().unwrap_or("-"),
            row.constraints,
            if row.certificate_verified { "ok" } else { "FAILED" },
            row.enumeration_optimum.as_deref().unwrap_or("infeasible"),
            if row.within_bound { "" } else { "  exceeds bound" }
        )
        .unwrap();
        if certificates {
            if let Some(y) = strings(&c.outcome.duals) {
                writeln!(text, "  duals: {}", y.join(" ")).unwrap();
            }
        }
    }
    let over_bound: Vec<String> = rows.iter().filter(|r| !r.within_bound).map(|r| r.case.clone()).collect();
    let attaining: Vec<String> = report.attaining.iter().map(ToString::to_string).collect();
    let global_max = report.global_max.as_ref().map(format_rational);
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    writeln!(text, "bound: {}", format_rational(&lp::target_bound())).unwrap();
    writeln!(text, "global max: {}", global_max.as_deref().unwrap_or("-")).unwrap();
    writeln!(text, "attaining: {}", attaining.join(" ")).unwrap();
    writeln!(text, "all within bound: {} ({} over)", yes_no(report.all_within_bound), over_bound.len()).unwrap();
    writeln!(text, "certificates verified: {}", yes_no(report.all_certified)).unwrap();
    writeln!(text, "enumeration agrees: {}", yes_no(report.all_agree)).unwrap();
    writeln!(text, "result: {}", if report.pass { "PASS" } else { "FAIL" }).unwrap();

    let code = if report.pass {
        0
    } else if !(report.all_certified && report.all_agree) {
        EXIT_INTERNAL
    } else {
        EXIT_UNVERIFIED
    };
    let cases = report
        .cases
        .iter()
        .zip(rows)
        .map(|(c, row)| CaseDetail {
            row,
            witness: certificates.then(|| strings(&c.outcome.witness)).flatten(),
            duals: certificates.then(|| strings(&c.outcome.duals)).flatten(),
        })
        .collect::<Vec<_>>();
    let csv_rows: Vec<CaseRow> = report.cases.iter().map(case_row).collect();
    let run = RunReport::<_, ()> {
        command: "lp-verify",
        input_digest: None,
        parameters: Parameters::default(),
        results: LpResult {
            bound: format_rational(&lp::target_bound()),
            degree_cap: format_rational(&cap),
            global_max,
            attaining,
            over_bound,
            all_within_bound: report.all_within_bound,
            all_certified: report.all_certified,
            all_agree: report.all_agree,
            pass: report.pass,
            cases,
        },
        counters: None,
        wall_ms: elapsed_ms(ctx, start),
    };
    let mut out = Output::new(&run, text)?.with_csv(csv_rows)?;
    out.code = code;
    Ok(out)
}
