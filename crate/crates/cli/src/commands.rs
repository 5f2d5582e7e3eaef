use std::io::Read;
use std::path::Path;
use std::time::Instant;

use preclusion::generators::{generate, random_bipartite_with_pm, random_graph, Family};
use preclusion::hypercube::{
    verify_edge_cut_property, verify_mps_hypercube, verify_optimal_conditional_sets_trivial,
    verify_optimal_mp_sets_are_stars, verify_trivial_sets_connected,
};
use preclusion::io::{detect_format, emit, graph_to_value, parse, to_edge_list, to_graph6};
use preclusion::preclusion::{solve, ProblemKind, SolveOptions, SolveStats, Value, WitnessEdge};
use preclusion::reduction::{build_reduction, reduction_fuzz, verify_equivalence, EquivalenceCheck};
use preclusion::suites::{chain_suite, matching_oracle_suite, ve_bound_suite};
use preclusion::Graph;
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::args::{BenchArgs, BenchFormat, Cli, Command, GenArgs, GraphFormat, InputFormat, Mode, ReduceArgs, SolveArgs, Suite, VerifyArgs};
use crate::report::{CommandEcho, InputSummary, RunReport, Status, Timing, TOOL};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] preclusion::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cannot start worker threads: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

type Result<T, E = CliError> = std::result::Result<T, E>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub enum Output {
    Report(Box<RunReport>),
    Raw(Vec<u8>),
}

impl Output {
    pub fn exit_code(&self) -> u8 {
        match self {
            Output::Report(r) => r.status.exit_code(),
            Output::Raw(_) => 0,
        }
    }

    pub fn into_bytes(self) -> Vec<u8> {
        match self {
            Output::Report(r) => r.to_json().into_bytes(),
            Output::Raw(b) => b,
        }
    }
}

struct Context {
    jobs: usize,
    deterministic: bool,
    start: Instant,
}

impl Context {
    fn options(&self, budget: Option<usize>) -> SolveOptions {
        SolveOptions {
            budget,
            deterministic: self.deterministic,
            jobs: self.jobs,
        }
    }

    fn report(
        &self,
        command: CommandEcho,
        input: Option<InputSummary>,
        status: Status,
        result: impl Serialize,
        stats: Option<SolveStats>,
    ) -> Output {
        Output::Report(Box::new(RunReport {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            input,
            status,
            result: serde_json::to_value(result).expect("results serialize"),
            stats,
            deterministic: self.deterministic,
            timing: Timing {
                wall_seconds: self.start.elapsed().as_secs_f64(),
                jobs: self.jobs,
            },
        }))
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    let ctx = Context {
        jobs: usize::from(cli.jobs),
        deterministic: cli.deterministic,
        start: Instant::now(),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(ctx.jobs).build()?;
    pool.install(|| match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a, &ctx),
        Command::Reduce(a) => cmd_reduce(a, &ctx),
        Command::Verify(a) => cmd_verify(a, &ctx),
        Command::Bench(a) => cmd_bench(a, &ctx),
    })
}

fn number<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse().map_err(|_| usage(format!("not a number: {s}")))
}

pub fn generate_from_spec(spec: &[String], seed: u64) -> Result<Graph> {
    let random = |want: &str| -> Result<(usize, f64)> {
        match spec {
            [_, a, p] => Ok((number(a)?, number(p)?)),
            _ => Err(usage(format!("{} takes {want} P", spec[0]))),
        }
    };
    let g = match spec.first().map(String::as_str) {
        Some("random") => {
            let (n, p) = random("N")?;
            random_graph(n, p, seed)?
        }
        Some("random-bipartite") => {
            let (t, p) = random("T")?;
            random_bipartite_with_pm(t, p, seed)?
        }
        _ => generate(Family::from_args(spec).map_err(|e| usage(e.to_string()))?).map_err(|e| usage(e.to_string()))?,
    };
    Ok(g)
}

fn cmd_gen(args: &GenArgs) -> Result<Output> {
    let g = generate_from_spec(&args.family, args.seed)?;
    Ok(Output::Raw(emit(&g, args.format.into())))
}

fn read_graph(input: Option<&Path>, format: InputFormat) -> Result<(Graph, InputSummary)> {
    let (source, bytes) = match input {
        None => ("stdin".to_string(), read_stdin()?),
        Some(p) if p.as_os_str() == "-" => ("stdin".to_string(), read_stdin()?),
        Some(p) => {
            let path = p.display().to_string();
            let bytes = std::fs::read(p).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            (path, bytes)
        }
    };
    let format = format.format().unwrap_or_else(|| detect_format(&bytes));
    let g = parse(format, &bytes)?;
    let summary = InputSummary::new(&source, &format.to_string(), &g);
    Ok((g, summary))
}

fn read_stdin() -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    std::io::stdin().read_to_end(&mut buf).map_err(|source| CliError::Io {
        path: "stdin".into(),
        source,
    })?;
    Ok(buf)
}

fn problem_kind(mode: Mode, s: Option<usize>) -> Result<ProblemKind> {
    match (mode, s) {
        (Mode::Mp, None) => Ok(ProblemKind::Mp),
        (Mode::Ak, None) => Ok(ProblemKind::Ak),
        (Mode::Mps, Some(s)) => Ok(ProblemKind::Mps { s }),
        (Mode::Mps, None) => Err(usage("--mode mps requires --s")),
        (_, Some(_)) => Err(usage("--s only applies to --mode mps")),
    }
}

fn cmd_solve(args: &SolveArgs, ctx: &Context) -> Result<Output> {
    let kind = problem_kind(args.mode, args.s)?;
    let (g, input) = read_graph(args.input.as_deref(), args.format)?;
    let sol = solve(&g, kind, &ctx.options(args.budget))?;
    let status = match sol.certificate.value {
        Value::Finite(_) => Status::Feasible,
        Value::Infinite | Value::GreaterThan(_) => Status::Infeasible,
    };
    let echo = CommandEcho::new("solve")
        .arg("mode", kind.to_string())
        .arg("budget", args.budget);
    Ok(ctx.report(echo, Some(input), status, &sol.certificate, Some(sol.stats)))
}

#[derive(Debug, Serialize)]
struct GadgetLabels {
    u_prime: usize,
    u_double_prime: usize,
    v_prime: usize,
    v_double_prime: usize,
    e: WitnessEdge,
    e_prime: WitnessEdge,
}

#[derive(Debug, Serialize)]
struct ReduceResult {
    t: usize,
    left: Vec<usize>,
    right: Vec<usize>,
    gadget: Json,
    labels: GadgetLabels,
    check: Option<EquivalenceCheck>,
}

fn witness_edge(g: &Graph, id: usize) -> WitnessEdge {
    let (u, v) = g.edge(id);
    WitnessEdge { id, u, v }
}

fn cmd_reduce(args: &ReduceArgs, ctx: &Context) -> Result<Output> {
    let (g, input) = read_graph(args.input.as_deref(), args.input_format)?;
    let r = build_reduction(&g)?;
    let gadget = r.gadget();
    let encoded = match args.format {
        GraphFormat::G6 => Json::String(to_graph6(gadget)),
        GraphFormat::Edges => Json::String(to_edge_list(gadget)),
        GraphFormat::Json => graph_to_value(gadget),
    };
    let check = match args.check {
        Some(k) => Some(verify_equivalence(&g, k, &args.s_values)?),
        None => None,
    };
    let status = match &check {
        None => Status::Ok,
        Some(c) => Status::from_passed(c.agree),
    };
    let a = r.added();
    let result = ReduceResult {
        t: r.t(),
        left: r.left().to_vec(),
        right: r.right().to_vec(),
        gadget: json!({
            "n": gadget.n(),
            "m": gadget.m(),
            "format": Into::<preclusion::io::Format>::into(args.format).to_string(),
            "graph": encoded,
        }),
        labels: GadgetLabels {
            u_prime: a.u_prime,
            u_double_prime: a.u_double_prime,
            v_prime: a.v_prime,
            v_double_prime: a.v_double_prime,
            e: witness_edge(gadget, r.edge_e()),
            e_prime: witness_edge(gadget, r.edge_e_prime()),
        },
        check,
    };
    let echo = CommandEcho::new("reduce")
        .arg("check", args.check)
        .arg("s", &args.s_values)
        .arg("format", Into::<preclusion::io::Format>::into(args.format).to_string());
    Ok(ctx.report(echo, Some(input), status, result, None))
}

/// One fully parameterised suite run.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "suite", rename_all = "kebab-case")]
pub enum SuiteCall {
    Hypercube { n: usize, s: usize },
    Lemma4 { n: usize, allow_long: bool },
    Stars { n: usize },
    Lemma5 { n: usize, samples: Option<usize>, seed: u64 },
    Lemma6 { n: usize },
    Lemma3 { seed: u64, count: usize },
    Chain { seed: u64, count: usize, max_s: usize },
    ReductionFuzz { seed: u64, count: usize, max_t: usize },
    Matching { seed: u64, count: usize, max_n: usize },
}

const DEFAULT_SEED: u64 = 42;

/// The suites run by `verify all`, at the sizes the acceptance criteria ask
/// for.
pub fn full_suite(seed: u64) -> Vec<SuiteCall> {
    let mut calls = vec![
        SuiteCall::Hypercube { n: 3, s: 2 },
        SuiteCall::Hypercube { n: 3, s: 3 },
        SuiteCall::Hypercube { n: 4, s: 2 },
    ];
    calls.extend((5..=8).map(|n| SuiteCall::Hypercube { n, s: 2 }));
    calls.extend([
        SuiteCall::Stars { n: 3 },
        SuiteCall::Lemma4 { n: 3, allow_long: false },
        SuiteCall::Lemma5 {
            n: 3,
            samples: None,
            seed,
        },
        SuiteCall::Lemma5 {
            n: 4,
            samples: Some(100_000),
            seed,
        },
    ]);
    calls.extend((3..=6).map(|n| SuiteCall::Lemma6 { n }));
    calls.extend([
        SuiteCall::Lemma3 { seed, count: 100 },
        SuiteCall::Chain {
            seed,
            count: 100,
            max_s: 3,
        },
        SuiteCall::ReductionFuzz {
            seed,
            count: 200,
            max_t: 5,
        },
        SuiteCall::Matching {
            seed,
            count: 500,
            max_n: 12,
        },
    ]);
    calls
}

fn resolve(args: &VerifyArgs) -> Result<SuiteCall> {
    let p = &args.params;
    let dims = |k: usize, names: &str| -> Result<Vec<usize>> {
        if p.len() != k {
            return Err(usage(format!("suite {:?} takes {names}", args.suite)));
        }
        Ok(p.iter().map(|&x| x as usize).collect())
    };
    let seeded = |default_count: usize| -> Result<(u64, usize)> {
        match p.as_slice() {
            [] => Ok((args.seed.unwrap_or(DEFAULT_SEED), args.count.unwrap_or(default_count))),
            [seed] => Ok((*seed, args.count.unwrap_or(default_count))),
            [seed, count] => Ok((*seed, *count as usize)),
            _ => Err(usage("random suites take SEED COUNT")),
        }
    };
    let call = match args.suite {
        Suite::Hypercube => {
            let d = dims(2, "N S")?;
            SuiteCall::Hypercube { n: d[0], s: d[1] }
        }
        Suite::Lemma4 => SuiteCall::Lemma4 {
            n: dims(1, "N")?[0],
            allow_long: args.allow_long,
        },
        Suite::Stars => SuiteCall::Stars { n: dims(1, "N")?[0] },
        Suite::Lemma5 => SuiteCall::Lemma5 {
            n: dims(1, "N")?[0],
            samples: args.samples,
            seed: args.seed.unwrap_or(DEFAULT_SEED),
        },
        Suite::Lemma6 => SuiteCall::Lemma6 { n: dims(1, "N")?[0] },
        Suite::Lemma3 => {
            let (seed, count) = seeded(100)?;
            SuiteCall::Lemma3 { seed, count }
        }
        Suite::Chain => {
            let (seed, count) = seeded(100)?;
            SuiteCall::Chain { seed, count, max_s: 3 }
        }
        Suite::ReductionFuzz => {
            let (seed, count) = seeded(200)?;
            SuiteCall::ReductionFuzz { seed, count, max_t: 5 }
        }
        Suite::Matching => {
            let (seed, count) = seeded(500)?;
            SuiteCall::Matching { seed, count, max_n: 12 }
        }
        Suite::All => unreachable!("handled by the caller"),
    };
    Ok(call)
}

#[derive(Debug, Serialize)]
struct SuiteOutcome {
    call: SuiteCall,
    passed: bool,
    result: Json,
}

fn to_json(v: impl Serialize) -> Json {
    serde_json::to_value(v).expect("reports serialize")
}

fn execute(call: &SuiteCall, ctx: &Context) -> Result<(bool, Json, Option<SolveStats>)> {
    let out = match *call {
        SuiteCall::Hypercube { n, s } => {
            let r = verify_mps_hypercube(n, s, &ctx.options(None))?;
            (r.passed, r.lower_bound_search.clone(), to_json(&r))
        }
        SuiteCall::Lemma4 { n, allow_long } => {
            let r = verify_optimal_conditional_sets_trivial(n, allow_long)?;
            (r.passed, None, to_json(&r))
        }
        SuiteCall::Stars { n } => {
            let r = verify_optimal_mp_sets_are_stars(n)?;
            (r.passed, None, to_json(&r))
        }
        SuiteCall::Lemma5 { n, samples, seed } => {
            let r = verify_edge_cut_property(n, samples, seed)?;
            let passed = r.literal_counterexample.reproduced && r.corrected_form.passed;
            (passed, None, to_json(&r))
        }
        SuiteCall::Lemma6 { n } => {
            let r = verify_trivial_sets_connected(n)?;
            (r.passed, None, to_json(&r))
        }
        SuiteCall::Lemma3 { seed, count } => {
            let r = ve_bound_suite(seed, count, &ctx.options(None))?;
            (r.passed, None, to_json(&r))
        }
        SuiteCall::Chain { seed, count, max_s } => {
            let r = chain_suite(seed, count, max_s, &ctx.options(None))?;
            (r.passed, None, to_json(&r))
        }
        SuiteCall::ReductionFuzz { seed, count, max_t } => {
            let r = reduction_fuzz(seed, count, max_t, &[1, 2])?;
            (r.passed(), None, to_json(&r))
        }
        SuiteCall::Matching { seed, count, max_n } => {
            let r = matching_oracle_suite(seed, count, max_n)?;
            (r.passed, None, to_json(&r))
        }
    };
    let (passed, stats, result) = out;
    Ok((passed, result, stats))
}

fn cmd_verify(args: &VerifyArgs, ctx: &Context) -> Result<Output> {
    if args.suite != Suite::All {
        let call = resolve(args)?;
        let (passed, result, stats) = execute(&call, ctx)?;
        let echo = CommandEcho::new("verify").arg("call", &call);
        return Ok(ctx.report(echo, None, Status::from_passed(passed), result, stats));
    }
    if !args.params.is_empty() {
        return Err(usage("suite all takes no parameters; use --seed"));
    }
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let mut outcomes = Vec::new();
    for call in full_suite(seed) {
        let (passed, result, _) = execute(&call, ctx)?;
        outcomes.push(SuiteOutcome { call, passed, result });
    }
    let passed = outcomes.iter().all(|o| o.passed);
    let failed: Vec<usize> = (0..outcomes.len()).filter(|&i| !outcomes[i].passed).collect();
    let result = json!({ "passed": passed, "failed": failed, "suites": outcomes });
    let echo = CommandEcho::new("verify").arg("call", json!({ "suite": "all", "seed": seed }));
    Ok(ctx.report(echo, None, Status::from_passed(passed), result, None))
}

#[derive(Debug, Serialize)]
struct BenchRow {
    graph: String,
    n: usize,
    m: usize,
    mode: String,
    value: String,
    nodes: u64,
    prunes: u64,
    depth_cuts: u64,
    wall_seconds: f64,
}

const BENCH_ROSTER: &[&str] = &[
    "hypercube 3",
    "hypercube 4",
    "petersen",
    "complete 6",
    "complete-bipartite 4 4",
    "cycle 8",
];

fn cmd_bench(args: &BenchArgs, ctx: &Context) -> Result<Output> {
    if args.count == 0 {
        return Err(usage("--count must be positive"));
    }
    let kinds = [
        ProblemKind::Mp,
        ProblemKind::Mps { s: 1 },
        ProblemKind::Mps { s: 2 },
        ProblemKind::Ak,
    ];
    let mut rows = Vec::new();
    for spec in BENCH_ROSTER {
        let words: Vec<String> = spec.split_whitespace().map(String::from).collect();
        let g = generate_from_spec(&words, 0)?;
        for kind in kinds {
            if kind == ProblemKind::Ak && g.n() % 2 == 1 {
                continue;
            }
            let mut best: Option<(f64, SolveStats, Value)> = None;
            for _ in 0..args.count {
                let t = Instant::now();
                let sol = solve(&g, kind, &ctx.options(None))?;
                let secs = t.elapsed().as_secs_f64();
                if best.as_ref().is_none_or(|b| secs < b.0) {
                    best = Some((secs, sol.stats, sol.certificate.value));
                }
            }
            let (secs, stats, value) = best.expect("count > 0");
            rows.push(BenchRow {
                graph: spec.to_string(),
                n: g.n(),
                m: g.m(),
                mode: kind.to_string(),
                value: value.to_string(),
                nodes: stats.nodes,
                prunes: stats.prunes,
                depth_cuts: stats.depth_cuts,
                wall_seconds: secs,
            });
        }
    }
    match args.format {
        BenchFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row)?;
            }
            let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
            Ok(Output::Raw(bytes))
        }
        BenchFormat::Json => {
            let echo = CommandEcho::new("bench").arg("count", args.count);
            Ok(ctx.report(echo, None, Status::Ok, rows, None))
        }
    }
}
