//! Library side of the `wcsp` command: instance files, the tightness
//! formula, benchmark rows and the oracle cross-check. The binary only
//! parses flags and calls into here.
//!
//! State ids are 1-based in every file and on the command line, matching
//! DIMACS, and 0-based inside the library.

use std::fmt;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use anyhow::{bail, ensure, Context, Result};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{bounded_sssp, Heuristic, ProblemInstance};
use crate::graph::{random_graph, Attr, Cost, Direction, Graph, StateId, INF};
use crate::oracle::{enumerate_pareto, MAX_ORACLE_STATES};
use crate::pqueue::{QueueKind, TiePolicy};
use crate::solvers::{solve, Algorithm, SolveError, SolveOutcome, SolverOptions, Status};

/// First line of every benchmark CSV.
pub const BENCH_HEADER: &str = "# wcsp-bench v1";

/// Process exit code for each solve status.
pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Optimal => 0,
        Status::Infeasible => 2,
        Status::Timeout => 3,
    }
}

pub fn parse_queue(s: &str) -> Result<QueueKind> {
    Ok(match s {
        "bucket" => QueueKind::Bucket,
        "hybrid" => QueueKind::Hybrid,
        "heap" | "binary-heap" => QueueKind::BinaryHeap,
        _ => bail!("unknown queue kind {s:?} (expected bucket, hybrid or heap)"),
    })
}

pub fn queue_name(q: QueueKind) -> &'static str {
    match q {
        QueueKind::Bucket => "bucket",
        QueueKind::Hybrid => "hybrid",
        QueueKind::BinaryHeap => "heap",
    }
}

pub fn parse_tie(s: &str) -> Result<TiePolicy> {
    Ok(match s {
        "lifo" | "none-lifo" => TiePolicy::NoneLifo,
        "fifo" | "none-fifo" => TiePolicy::NoneFifo,
        "secondary" | "tie" => TiePolicy::Secondary,
        _ => bail!("unknown tie policy {s:?} (expected lifo, fifo or secondary)"),
    })
}

pub fn tie_name(t: TiePolicy) -> &'static str {
    match t {
        TiePolicy::NoneLifo => "lifo",
        TiePolicy::NoneFifo => "fifo",
        TiePolicy::Secondary => "secondary",
    }
}

/// Parses a `queue/tie` pair such as `bucket/lifo` or `heap/secondary`.
pub fn parse_config(s: &str) -> Result<(QueueKind, TiePolicy)> {
    let (q, t) = s
        .split_once('/')
        .with_context(|| format!("expected QUEUE/TIE, got {s:?}"))?;
    Ok((parse_queue(q)?, parse_tie(t)?))
}

/// Parses a tightness value written as `0.6`, `60%` or `3/5`.
pub fn parse_delta(s: &str) -> Result<Ratio<u64>> {
    let s = s.trim();
    let r = if let Some(p) = s.strip_suffix('%') {
        decimal(p)? / Ratio::from_integer(100)
    } else if let Some((n, d)) = s.split_once('/') {
        let d: u64 = d.trim().parse()?;
        ensure!(d > 0, "zero denominator in {s:?}");
        Ratio::new(n.trim().parse()?, d)
    } else {
        decimal(s)?
    };
    ensure!(r <= Ratio::from_integer(1), "tightness {s:?} is above 1");
    Ok(r)
}

fn decimal(s: &str) -> Result<Ratio<u64>> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    ensure!(
        !(int.is_empty() && frac.is_empty()) && frac.chars().all(|c| c.is_ascii_digit()),
        "bad number {s:?}"
    );
    let int: u64 = if int.is_empty() { 0 } else { int.parse()? };
    let scale = 10u64
        .checked_pow(frac.len() as u32)
        .with_context(|| format!("too many digits in {s:?}"))?;
    let frac: u64 = if frac.is_empty() { 0 } else { frac.parse()? };
    Ok(Ratio::new(int * scale + frac, scale))
}

/// `W = h2 + delta * (ub2 - h2)`, rounded half up.
pub fn tightness_limit(h2: Cost, ub2: Cost, delta: Ratio<u64>) -> Cost {
    debug_assert!(ub2 >= h2);
    let exact = Ratio::<u128>::new(*delta.numer() as u128, *delta.denom() as u128) * (ub2 - h2) as u128
        + Ratio::from_integer(h2 as u128);
    (exact + Ratio::new(1, 2)).floor().to_integer() as Cost
}

/// The cost2 lower bound `h2` and the cost2 of the cost1-shortest path `ub2`
/// for a pair, or `None` when `goal` is unreachable.
pub fn pair_bounds(g: &Graph, start: StateId, goal: StateId) -> Option<(Cost, Cost)> {
    let inst = ProblemInstance {
        start,
        goal,
        weight_limit: INF,
    };
    let on2 = bounded_sssp(g, &inst, Direction::Forward, Attr::Cost2, Heuristic::Zero, INF, None, |_, _, _| {});
    let on1 = bounded_sssp(g, &inst, Direction::Forward, Attr::Cost1, Heuristic::Zero, INF, None, |_, _, _| {});
    let s = start as usize;
    on2.expanded[s].then(|| (on2.h[s], on1.ub[s]))
}

/// How a row gives its weight limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Weight(Cost),
    Tightness(Ratio<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceRow {
    /// 0-based.
    pub start: StateId,
    /// 0-based.
    pub goal: StateId,
    pub limit: Limit,
}

/// A list of queries against one graph.
///
/// ```text
/// # comment
/// graph ny-d.gr ny-t.gr ny.co
/// 1 5 W 6
/// 1 5 delta 3/5
/// ```
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph_files: Vec<PathBuf>,
    pub rows: Vec<InstanceRow>,
}

impl InstanceFile {
    pub fn parse<R: BufRead>(reader: R) -> Result<InstanceFile> {
        let mut out = InstanceFile::default();
        for (no, line) in reader.lines().enumerate() {
            let line = line?;
            let text = line.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let parts: Vec<&str> = text.split_whitespace().collect();
            let at = || format!("instance file line {}", no + 1);
            if parts[0] == "graph" {
                out.graph_files = parts[1..].iter().map(PathBuf::from).collect();
                continue;
            }
            ensure!(parts.len() == 4, "{}: expected `START GOAL W|delta VALUE`", at());
            let id = |s: &str| -> Result<StateId> {
                let v: StateId = s.parse().with_context(at)?;
                ensure!(v >= 1, "{}: state ids are 1-based", at());
                Ok(v - 1)
            };
            let limit = match parts[2] {
                "W" | "w" => Limit::Weight(parts[3].parse().with_context(at)?),
                "delta" | "d" => Limit::Tightness(parse_delta(parts[3]).with_context(at)?),
                m => bail!("{}: unknown limit marker {m:?}", at()),
            };
            out.rows.push(InstanceRow {
                start: id(parts[0])?,
                goal: id(parts[1])?,
                limit,
            });
        }
        Ok(out)
    }

    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# wcsp instances: START GOAL W|delta VALUE, 1-based ids")?;
        if !self.graph_files.is_empty() {
            let names: Vec<_> = self.graph_files.iter().map(|p| p.display().to_string()).collect();
            writeln!(out, "graph {}", names.join(" "))?;
        }
        for r in &self.rows {
            match r.limit {
                Limit::Weight(w) => writeln!(out, "{} {} W {}", r.start + 1, r.goal + 1, w)?,
                Limit::Tightness(d) => writeln!(out, "{} {} delta {}/{}", r.start + 1, r.goal + 1, d.numer(), d.denom())?,
            }
        }
        Ok(())
    }
}

/// Turns a row into a concrete instance, applying the tightness formula to
/// `delta` rows. Returns `None` if the pair is unreachable.
pub fn resolve(g: &Graph, row: &InstanceRow) -> Result<Option<ProblemInstance>> {
    let n = g.state_count() as StateId;
    ensure!(
        row.start < n && row.goal < n,
        "pair ({}, {}) is outside the graph",
        row.start + 1,
        row.goal + 1
    );
    let weight_limit = match row.limit {
        Limit::Weight(w) => w,
        Limit::Tightness(d) => match pair_bounds(g, row.start, row.goal) {
            Some((h2, ub2)) => tightness_limit(h2, ub2, d),
            None => return Ok(None),
        },
    };
    Ok(Some(ProblemInstance {
        start: row.start,
        goal: row.goal,
        weight_limit,
    }))
}

/// One `W` row per pair and tightness level, plus the reversed pair when
/// asked. Unreachable pairs are skipped and degenerate ones (`h2 == ub2`)
/// get `W = h2`; both cases are reported in the returned warnings.
pub fn gen_instances(
    g: &Graph,
    pairs: &[(StateId, StateId)],
    deltas: &[Ratio<u64>],
    with_reversed: bool,
) -> (InstanceFile, Vec<String>) {
    let mut file = InstanceFile::default();
    let mut warnings = Vec::new();
    let mut all = pairs.to_vec();
    if with_reversed {
        all.extend(pairs.iter().map(|&(s, t)| (t, s)));
    }
    for (s, t) in all {
        let Some((h2, ub2)) = pair_bounds(g, s, t) else {
            warnings.push(format!("pair ({}, {}) is unreachable, skipped", s + 1, t + 1));
            continue;
        };
        if h2 == ub2 {
            warnings.push(format!(
                "pair ({}, {}) has h2 == ub2 == {h2}; every level gives W = {h2}",
                s + 1,
                t + 1
            ));
        }
        for &d in deltas {
            file.rows.push(InstanceRow {
                start: s,
                goal: t,
                limit: Limit::Weight(tightness_limit(h2, ub2, d)),
            });
        }
    }
    (file, warnings)
}

/// One benchmark measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub instance: usize,
    pub algorithm: String,
    pub queue: String,
    pub tie: String,
    pub status: String,
    pub cost1: Option<Cost>,
    pub cost2: Option<Cost>,
    pub runtime_us: u64,
    pub expansions: u64,
    pub generated: u64,
    pub pruned_dominance: u64,
    pub pruned_state_ub: u64,
    pub pruned_global_ub: u64,
    pub queue_ops: u64,
    pub peak_pool_blocks: u64,
}

impl ResultRow {
    fn new(instance: usize, algo: Algorithm, opts: &SolverOptions, res: &Result<SolveOutcome, SolveError>) -> ResultRow {
        let mut row = ResultRow::failed(instance, algo, opts, String::new());
        match res {
            Ok(o) => {
                let m = &o.metrics;
                row.status = o.status.to_string();
                row.cost1 = o.costs.map(|c| c.0);
                row.cost2 = o.costs.map(|c| c.1);
                row.runtime_us = m.runtime_us;
                row.expansions = m.expansions;
                row.generated = m.generated;
                row.pruned_dominance = m.pruned_dominance;
                row.pruned_state_ub = m.pruned_state_ub;
                row.pruned_global_ub = m.pruned_global_ub;
                row.queue_ops = m.queue.queue_ops;
                row.peak_pool_blocks = m.peak_pool_blocks;
            }
            Err(e) => row.status = format!("error: {e}"),
        }
        row
    }

    fn failed(instance: usize, algo: Algorithm, opts: &SolverOptions, status: String) -> ResultRow {
        ResultRow {
            instance,
            algorithm: algo.name().to_string(),
            queue: queue_name(opts.queue).to_string(),
            tie: tie_name(opts.tie_policy).to_string(),
            status,
            cost1: None,
            cost2: None,
            runtime_us: 0,
            expansions: 0,
            generated: 0,
            pruned_dominance: 0,
            pruned_state_ub: 0,
            pruned_global_ub: 0,
            queue_ops: 0,
            peak_pool_blocks: 0,
        }
    }
}

/// Writes rows as CSV under [`BENCH_HEADER`].
pub fn write_rows<W: Write>(rows: &[ResultRow], mut out: W) -> Result<()> {
    writeln!(out, "{BENCH_HEADER}")?;
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows<R: std::io::Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    r.deserialize().map(|row| Ok(row?)).collect()
}

/// Settings of a benchmark batch.
#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub algorithms: Vec<Algorithm>,
    pub configs: Vec<(QueueKind, TiePolicy)>,
    pub repeats: usize,
    pub base: SolverOptions,
}

/// Runs every instance under every algorithm and queue setting `repeats`
/// times and keeps the run with the median runtime. Failing runs become
/// rows with an `error` status.
pub fn bench(g: &Graph, instances: &InstanceFile, plan: &BenchPlan) -> Vec<ResultRow> {
    let mut rows = Vec::new();
    for (idx, row) in instances.rows.iter().enumerate() {
        let inst = match resolve(g, row) {
            Ok(Some(i)) => Ok(i),
            Ok(None) => Err("unreachable pair".to_string()),
            Err(e) => Err(e.to_string()),
        };
        for &algo in &plan.algorithms {
            for &(q, t) in &plan.configs {
                let opts = SolverOptions {
                    queue: q,
                    tie_policy: t,
                    ..plan.base.clone()
                };
                let inst = match &inst {
                    Ok(i) => i,
                    Err(msg) => {
                        rows.push(ResultRow::failed(idx + 1, algo, &opts, format!("error: {msg}")));
                        continue;
                    }
                };
                let mut runs: Vec<ResultRow> = (0..plan.repeats.max(1))
                    .map(|_| ResultRow::new(idx + 1, algo, &opts, &solve(algo, g, inst, &opts)))
                    .collect();
                runs.sort_by_key(|r| r.runtime_us);
                rows.push(runs.swap_remove((runs.len() - 1) / 2));
            }
        }
    }
    rows
}

/// Result of an oracle cross-check.
#[derive(Debug, Clone, Default)]
pub struct OracleReport {
    pub graphs: usize,
    pub solves: usize,
    pub warnings: Vec<String>,
    /// Verbose description of the first disagreement.
    pub counterexample: Option<String>,
    pub failures: usize,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{verdict}: {} graphs, {} solves, {} mismatches",
            self.graphs, self.solves, self.failures
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Settings of an oracle cross-check.
#[derive(Debug, Clone, Copy)]
pub struct OracleCheck {
    pub seed: u64,
    pub graphs: usize,
    pub max_states: usize,
    pub max_cost: u32,
}

/// Every queue and tie-policy pairing a solver accepts.
pub const ALL_CONFIGS: [(QueueKind, TiePolicy); 6] = [
    (QueueKind::Bucket, TiePolicy::NoneLifo),
    (QueueKind::Bucket, TiePolicy::NoneFifo),
    (QueueKind::Hybrid, TiePolicy::NoneLifo),
    (QueueKind::Hybrid, TiePolicy::Secondary),
    (QueueKind::BinaryHeap, TiePolicy::NoneLifo),
    (QueueKind::BinaryHeap, TiePolicy::Secondary),
];

/// Compares every solver and queue setting against the brute-force oracle
/// on seeded random graphs with a sweep of weight limits per pair.
pub fn oracle_check(cfg: OracleCheck) -> Result<OracleReport> {
    oracle_check_with(cfg, solve)
}

/// [`oracle_check`] with the solver supplied by the caller.
pub fn oracle_check_with(
    cfg: OracleCheck,
    solver: impl Fn(Algorithm, &Graph, &ProblemInstance, &SolverOptions) -> Result<SolveOutcome, SolveError>,
) -> Result<OracleReport> {
    ensure!(
        (2..=MAX_ORACLE_STATES).contains(&cfg.max_states),
        "max states must be in 2..={MAX_ORACLE_STATES}"
    );
    ensure!(cfg.max_cost >= 1, "max cost must be at least 1");
    let mut report = OracleReport {
        graphs: cfg.graphs,
        ..Default::default()
    };
    if cfg.graphs == 0 {
        report.warnings.push("no graphs requested; nothing was checked".into());
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.graphs {
        let n = rng.gen_range(2..=cfg.max_states);
        let m = rng.gen_range(n..=(4 * n).min(n * (n - 1)));
        let g = random_graph(n, m, cfg.max_cost, rng.gen());
        let start = rng.gen_range(0..n as StateId);
        let goal = (start + rng.gen_range(1..n as StateId)) % n as StateId;
        let front = enumerate_pareto(&g, start, goal)?;
        let mut limits = vec![0];
        if let (Some(first), Some(last)) = (front.points.first(), front.points.last()) {
            let (h2, ub2) = (last.cost2, first.cost2);
            limits.extend([h2.saturating_sub(1), h2, (h2 + ub2) / 2, ub2, ub2 + 1]);
        }
        limits.sort_unstable();
        limits.dedup();
        for w in limits {
            let want = front.points.iter().find(|p| p.cost2 <= w).map(|p| (p.cost1, p.cost2));
            let inst = ProblemInstance {
                start,
                goal,
                weight_limit: w,
            };
            for algo in Algorithm::ALL {
                for (q, t) in ALL_CONFIGS {
                    let opts = SolverOptions::default().with_queue(q, t);
                    report.solves += 1;
                    let res = solver(algo, &g, &inst, &opts);
                    let ok = match &res {
                        Ok(o) => {
                            o.costs == want
                                && o.path.as_ref().map_or(want.is_none(), |p| {
                                    g.path_cost(p) == want && p.first() == Some(&start) && p.last() == Some(&goal)
                                })
                        }
                        Err(_) => false,
                    };
                    if ok {
                        continue;
                    }
                    report.failures += 1;
                    if report.counterexample.is_none() {
                        report.counterexample = Some(describe(&g, &inst, algo, &opts, want, &res, &solver));
                    }
                }
            }
        }
    }
    Ok(report)
}

fn describe(
    g: &Graph,
    inst: &ProblemInstance,
    algo: Algorithm,
    opts: &SolverOptions,
    want: Option<(Cost, Cost)>,
    got: &Result<SolveOutcome, SolveError>,
    solver: &impl Fn(Algorithm, &Graph, &ProblemInstance, &SolverOptions) -> Result<SolveOutcome, SolveError>,
) -> String {
    let mut s = String::new();
    let got = match got {
        Ok(o) => format!("{} {:?} path {:?}", o.status, o.costs, o.path),
        Err(e) => format!("error: {e}"),
    };
    s += &format!(
        "counterexample: {} {}/{} start {} goal {} W {}\n  expected {want:?}\n  got {got}\n",
        algo,
        queue_name(opts.queue),
        tie_name(opts.tie_policy),
        inst.start + 1,
        inst.goal + 1,
        inst.weight_limit
    );
    s += &format!("graph: {} states, {} edges (from to cost1 cost2)\n", g.state_count(), g.edge_count());
    for (u, v, c1, c2) in g.edges() {
        s += &format!("  {} {} {} {}\n", u + 1, v + 1, c1, c2);
    }
    let traced = SolverOptions {
        trace: true,
        ..opts.clone()
    };
    if let Ok(o) = solver(algo, g, inst, &traced) {
        if let Some(t) = o.trace {
            for (d, events) in t.events.iter().enumerate() {
                for e in events {
                    s += &format!("  dir {d}: {e:?}\n");
                }
            }
            s += &format!("  incumbents: {:?}\n", t.incumbents);
        }
    }
    s
}

/// Graph file flags.
#[derive(Debug, Clone, clap::Args)]
pub struct GraphFlags {
    /// DIMACS .gr file with the cost1 (primary) attribute.
    #[arg(long)]
    pub cost1: Option<PathBuf>,
    /// DIMACS .gr file with the cost2 (weight) attribute, same arcs and order.
    #[arg(long)]
    pub cost2: Option<PathBuf>,
    /// Optional DIMACS .co coordinate file.
    #[arg(long)]
    pub coords: Option<PathBuf>,
}

impl GraphFlags {
    pub fn files(&self) -> Option<Vec<PathBuf>> {
        let mut v = vec![self.cost1.clone()?, self.cost2.clone()?];
        v.extend(self.coords.clone());
        Some(v)
    }
}

/// Solver flags shared by `solve` and `bench`.
#[derive(Debug, Clone, clap::Args)]
pub struct RunFlags {
    /// Priority queue: bucket, hybrid or heap.
    #[arg(long, default_value = "bucket")]
    pub queue: String,
    /// Tie policy: lifo, fifo (bucket only) or secondary (hybrid and heap only).
    #[arg(long, default_value = "lifo")]
    pub tie: String,
    /// Bucket width of the bucket and hybrid queues.
    #[arg(long, default_value_t = 1)]
    pub delta_f: Cost,
    /// Run the two directions of the parallel solvers on real threads.
    #[arg(long, conflicts_with = "lockstep")]
    pub threads: bool,
    /// Alternate the two directions every N expansions on one thread.
    #[arg(long, default_value_t = 1)]
    pub lockstep: u32,
    /// Time limit in seconds.
    #[arg(long = "timeout")]
    pub timeout_s: Option<f64>,
    /// Disable heuristic tuning in the bidirectional A* solver.
    #[arg(long)]
    pub no_htf: bool,
    /// Run the cost1 bounded searches first during initialisation.
    #[arg(long)]
    pub reversed_init: bool,
}

impl RunFlags {
    /// Validates the flags and builds solver options. Unsupported
    /// queue/tie combinations are rejected here rather than at solve time.
    pub fn options(&self) -> Result<SolverOptions> {
        let queue = parse_queue(&self.queue)?;
        let tie_policy = parse_tie(&self.tie)?;
        validate_config(queue, tie_policy)?;
        ensure!(self.delta_f >= 1, "--delta-f must be at least 1");
        ensure!(self.lockstep >= 1, "--lockstep must be at least 1");
        Ok(SolverOptions {
            queue,
            tie_policy,
            delta_f: self.delta_f,
            schedule: if self.threads {
                crate::Schedule::RealThreads
            } else {
                crate::Schedule::Lockstep(self.lockstep)
            },
            timeout: self.timeout_s.map(Duration::from_secs_f64),
            htf: !self.no_htf,
            reversed_init: self.reversed_init,
            ..Default::default()
        })
    }
}

pub fn validate_config(q: QueueKind, t: TiePolicy) -> Result<()> {
    match (q, t) {
        (QueueKind::Bucket, TiePolicy::Secondary) => {
            bail!("the bucket queue cannot break ties; use --tie lifo or fifo, or another queue")
        }
        (QueueKind::Hybrid | QueueKind::BinaryHeap, TiePolicy::NoneFifo) => {
            bail!("--tie fifo is only available with the bucket queue")
        }
        _ => Ok(()),
    }
}

/// Parses a comma-separated list with `parse`.
pub fn parse_list<T>(s: &str, parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(|p| parse(p.trim())).collect()
}

/// Parses `START:GOAL` with 1-based ids.
pub fn parse_pair(s: &str) -> Result<(StateId, StateId)> {
    let (a, b) = s.split_once(':').with_context(|| format!("expected START:GOAL, got {s:?}"))?;
    let (a, b): (StateId, StateId) = (a.parse()?, b.parse()?);
    ensure!(a >= 1 && b >= 1, "state ids are 1-based");
    Ok((a - 1, b - 1))
}

/// Loads a graph from `COST1.gr COST2.gr [COORDS.co]`.
pub fn load_graph(files: &[PathBuf]) -> Result<Graph> {
    ensure!(
        (2..=3).contains(&files.len()),
        "expected two .gr files and an optional .co file"
    );
    Ok(crate::graph::load_dimacs(
        &files[0],
        &files[1],
        files.get(2).map(PathBuf::as_path),
    )?)
}

/// Writes `g` with fresh cost2 values drawn from `[lo, hi]` as two `.gr`
/// files (cost1 is rewritten so both list the arcs in the same order).
pub fn randomize(g: &Graph, seed: u64, lo: u32, hi: u32, cost1_out: &Path, cost2_out: &Path) -> Result<Graph> {
    ensure!(lo >= 1 && hi >= lo, "need 1 <= lo <= hi");
    let r = g.randomize_cost2(seed, lo, hi);
    let create = |p: &Path| -> Result<std::io::BufWriter<std::fs::File>> {
        Ok(std::io::BufWriter::new(
            std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        ))
    };
    crate::graph::write_gr(&r, Attr::Cost1, create(cost1_out)?)?;
    crate::graph::write_gr(&r, Attr::Cost2, create(cost2_out)?)?;
    Ok(r)
}

impl FromStr for Limit {
    type Err = anyhow::Error;

    /// `W=6` or a bare integer gives a weight; `delta=0.6` or `d=60%` a tightness.
    fn from_str(s: &str) -> Result<Limit> {
        if let Some(v) = s.strip_prefix("delta=").or_else(|| s.strip_prefix("d=")) {
            return Ok(Limit::Tightness(parse_delta(v)?));
        }
        let v = s.strip_prefix("W=").or_else(|| s.strip_prefix("w=")).unwrap_or(s);
        Ok(Limit::Weight(v.parse().with_context(|| format!("bad weight limit {s:?}"))?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::example_graph;

    #[test]
    fn tightness_examples() {
        assert_eq!(tightness_limit(10, 30, Ratio::new(1, 2)), 20);
        assert_eq!(tightness_limit(3, 8, Ratio::new(3, 5)), 6);
        assert_eq!(tightness_limit(3, 8, Ratio::from_integer(1)), 8);
        // 3 + 0.5 * 5 = 5.5 rounds up.
        assert_eq!(tightness_limit(3, 8, Ratio::new(1, 2)), 6);
        assert_eq!(tightness_limit(3, 8, Ratio::new(2, 5)), 5);
    }

    #[test]
    fn delta_parsing() {
        assert_eq!(parse_delta("0.6").unwrap(), Ratio::new(3, 5));
        assert_eq!(parse_delta("60%").unwrap(), Ratio::new(3, 5));
        assert_eq!(parse_delta("3/5").unwrap(), Ratio::new(3, 5));
        assert_eq!(parse_delta("1").unwrap(), Ratio::from_integer(1));
        assert!(parse_delta("1.5").is_err());
        assert!(parse_delta("x").is_err());
    }

    #[test]
    fn example_pair_bounds() {
        let g = example_graph();
        assert_eq!(pair_bounds(&g, 0, 4), Some((3, 8)));
        assert_eq!(pair_bounds(&g, 4, 0), None);
    }

    #[test]
    fn generated_instances() {
        let g = example_graph();
        let (f, warn) = gen_instances(&g, &[(0, 4)], &[Ratio::new(3, 5), Ratio::from_integer(1)], true);
        assert_eq!(warn.len(), 1, "reversed pair is unreachable");
        assert_eq!(
            f.rows,
            vec![
                InstanceRow { start: 0, goal: 4, limit: Limit::Weight(6) },
                InstanceRow { start: 0, goal: 4, limit: Limit::Weight(8) },
            ]
        );
    }

    #[test]
    fn instance_file_round_trip() {
        let text = "# demo\ngraph a.gr b.gr\n1 5 W 6\n1 5 delta 3/5 # tight\n";
        let f = InstanceFile::parse(text.as_bytes()).unwrap();
        assert_eq!(f.graph_files, vec![PathBuf::from("a.gr"), PathBuf::from("b.gr")]);
        assert_eq!(f.rows[1].limit, Limit::Tightness(Ratio::new(3, 5)));
        let mut buf = Vec::new();
        f.write(&mut buf).unwrap();
        assert_eq!(InstanceFile::parse(&buf[..]).unwrap(), f);
        assert!(InstanceFile::parse("0 5 W 6".as_bytes()).is_err());
        let g = example_graph();
        assert_eq!(resolve(&g, &f.rows[1]).unwrap().unwrap().weight_limit, 6);
    }

    #[test]
    fn bench_rows() {
        let g = example_graph();
        let f = InstanceFile::parse("1 5 W 6\n1 5 W 2\n5 1 W 9\n".as_bytes()).unwrap();
        let plan = BenchPlan {
            algorithms: vec![Algorithm::WcAStar, Algorithm::WcEbba],
            configs: vec![(QueueKind::Bucket, TiePolicy::NoneLifo)],
            repeats: 5,
            base: SolverOptions::default(),
        };
        let rows = bench(&g, &f, &plan);
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].status, "optimal");
        assert_eq!((rows[0].cost1, rows[0].cost2), (Some(5), Some(5)));
        assert_eq!(rows[2].status, "infeasible");
        assert_eq!(rows[4].status, "infeasible");
        let mut buf = Vec::new();
        write_rows(&rows, &mut buf).unwrap();
        assert!(buf.starts_with(BENCH_HEADER.as_bytes()));
        assert_eq!(read_rows(&buf[..]).unwrap(), rows);
    }

    #[test]
    fn flag_validation() {
        let flags = RunFlags {
            queue: "bucket".into(),
            tie: "secondary".into(),
            delta_f: 1,
            threads: false,
            lockstep: 1,
            timeout_s: None,
            no_htf: false,
            reversed_init: false,
        };
        assert!(flags.options().is_err());
        let ok = RunFlags {
            tie: "lifo".into(),
            ..flags
        };
        assert!(ok.options().is_ok());
    }

    #[test]
    fn oracle_check_passes_and_catches_faults() {
        let cfg = OracleCheck {
            seed: 7,
            graphs: 20,
            max_states: 12,
            max_cost: 10,
        };
        let r = oracle_check(cfg).unwrap();
        assert!(r.passed(), "{r}");
        let faulty = |a: Algorithm, g: &Graph, i: &ProblemInstance, o: &SolverOptions| {
            let mut out = solve(a, g, i, o)?;
            out.costs = out.costs.map(|(c1, c2)| (c1 + 1, c2));
            Ok(out)
        };
        let r = oracle_check_with(cfg, faulty).unwrap();
        assert!(!r.passed());
        assert!(r.counterexample.as_ref().unwrap().contains("counterexample"));
        let empty = oracle_check(OracleCheck { graphs: 0, ..cfg }).unwrap();
        assert!(empty.passed() && !empty.warnings.is_empty());
    }
}
