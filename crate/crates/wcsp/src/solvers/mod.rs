//! The four constrained searches and their shared result types.

mod engine;
mod live;
mod wc_astar;
mod wc_ba_star;
mod wc_ebba;
mod wc_ebba_par;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::bounds::{BoundsTables, BudgetFactors, GlobalBounds, Incumbent, InitOutcome, InitStatus, ProblemInstance, SolutionRecord};
use crate::graph::{Cost, GeoHeuristic, Graph, StateId};
use crate::nodepool::{erase_loops, join_pair, reconstruct, ParentArrays};
use crate::pqueue::{FrontierQueue, QueueConfig, QueueError, QueueKind, QueueStats, TiePolicy};
use crate::schedule::Schedule;

pub use engine::{ChiEntry, PruneReason, TraceEvent};
pub use live::{BoundGrid, LiveBounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    WcAStar,
    WcBaStar,
    WcEbba,
    WcEbbaPar,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::WcAStar, Algorithm::WcBaStar, Algorithm::WcEbba, Algorithm::WcEbbaPar];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::WcAStar => "wc-astar",
            Algorithm::WcBaStar => "wc-bastar",
            Algorithm::WcEbba => "wc-ebba",
            Algorithm::WcEbbaPar => "wc-ebba-par",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected one of wc-astar, wc-bastar, wc-ebba, wc-ebba-par)"))
    }
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub queue: QueueKind,
    pub tie_policy: TiePolicy,
    /// Bucket width for the bucket and hybrid queues.
    pub delta_f: Cost,
    /// How the two workers of the parallel solvers are driven.
    pub schedule: Schedule,
    /// Wall-clock limit, checked every 4096 pops.
    pub timeout: Option<Duration>,
    /// Stop before the expansion that would exceed this count.
    pub max_expansions: Option<u64>,
    /// Heuristic tuning in the bidirectional A* solver.
    pub htf: bool,
    /// Drop a stored partial path that a newer one dominates (only without tie-breaking).
    pub store_refinement: bool,
    /// Use the cost1-first variant of the sequential initialisation.
    pub reversed_init: bool,
    /// Use a great-circle heuristic during initialisation when coordinates exist.
    pub geo_heuristic: bool,
    /// Record a trace of search events, parent arrays and final bounds.
    pub trace: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            queue: QueueKind::Bucket,
            tie_policy: TiePolicy::NoneLifo,
            delta_f: 1,
            schedule: Schedule::Lockstep(1),
            timeout: None,
            max_expansions: None,
            htf: true,
            store_refinement: true,
            reversed_init: false,
            geo_heuristic: true,
            trace: false,
        }
    }
}

impl SolverOptions {
    pub fn with_queue(mut self, queue: QueueKind, tie_policy: TiePolicy) -> Self {
        self.queue = queue;
        self.tie_policy = tie_policy;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Optimal,
    Infeasible,
    Timeout,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Optimal => "optimal",
            Status::Infeasible => "infeasible",
            Status::Timeout => "timeout",
        })
    }
}

/// Counters collected over one solve. Search counters cover the
/// constrained search only; initialisation work is in `init_expansions`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveMetrics {
    pub init_expansions: u64,
    /// Size of the reduced state set the constrained search ran on.
    pub valid_states: u64,
    pub pops: u64,
    /// Nodes passed to the expansion procedure.
    pub expansions: u64,
    /// Nodes that passed the lazy dominance check.
    pub explored: u64,
    pub generated: u64,
    pub pruned_dominance: u64,
    pub pruned_state_ub: u64,
    pub pruned_global_ub: u64,
    pub terminal_skips: u64,
    /// Nodes pushed back after their tuned secondary key went stale.
    pub reinserts: u64,
    pub budget_rejections: u64,
    /// Budget-rejected nodes outside the coupling area. Always zero when
    /// the budget factors sum to one.
    pub coupling_violations: u64,
    pub stored: u64,
    pub queue: QueueStats,
    pub pool_slots: u64,
    pub peak_pool_blocks: u64,
    pub runtime_us: u64,
}

impl SolveMetrics {
    pub(crate) fn absorb(&mut self, o: &SolveMetrics) {
        self.pops += o.pops;
        self.expansions += o.expansions;
        self.explored += o.explored;
        self.generated += o.generated;
        self.pruned_dominance += o.pruned_dominance;
        self.pruned_state_ub += o.pruned_state_ub;
        self.pruned_global_ub += o.pruned_global_ub;
        self.terminal_skips += o.terminal_skips;
        self.reinserts += o.reinserts;
        self.budget_rejections += o.budget_rejections;
        self.coupling_violations += o.coupling_violations;
        self.stored += o.stored;
        self.queue.merge(&o.queue);
        self.pool_slots += o.pool_slots;
        self.peak_pool_blocks += o.peak_pool_blocks;
    }
}

/// Debug output of a traced solve.
#[derive(Debug, Clone, Default)]
pub struct SearchTrace {
    /// Events per direction, indexed by [`Direction::index`].
    pub events: [Vec<TraceEvent>; 2],
    pub parents: [Option<ParentArrays>; 2],
    pub tables: BoundsTables,
    /// `h^d_p` and `ub^d_p` at the end of the search, indexed `[d][p]`.
    pub final_h: BoundGrid,
    pub final_ub: BoundGrid,
    pub incumbents: Vec<(Cost, Cost)>,
    pub budget: Option<BudgetFactors>,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: Status,
    /// `(cost1, cost2)` of the returned path.
    pub costs: Option<(Cost, Cost)>,
    pub path: Option<Vec<StateId>>,
    pub metrics: SolveMetrics,
    pub trace: Option<SearchTrace>,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid queue configuration: {0}")]
    Queue(#[from] QueueError),
    #[error("state {0} is out of range for a graph with {1} states")]
    StateOutOfRange(StateId, usize),
    #[error("solver produced an inconsistent result: {0}")]
    Internal(String),
}

/// Solves one instance with the chosen algorithm.
pub fn solve(algo: Algorithm, g: &Graph, inst: &ProblemInstance, opts: &SolverOptions) -> Result<SolveOutcome, SolveError> {
    let n = g.state_count();
    for s in [inst.start, inst.goal] {
        if s as usize >= n {
            return Err(SolveError::StateOutOfRange(s, n));
        }
    }
    FrontierQueue::new(QueueConfig {
        kind: opts.queue,
        f_min: 0,
        f_max: 0,
        delta_f: opts.delta_f,
        tie_policy: opts.tie_policy,
    })?;
    let t0 = Instant::now();
    if inst.start == inst.goal {
        return Ok(SolveOutcome {
            status: Status::Optimal,
            costs: Some((0, 0)),
            path: Some(vec![inst.start]),
            metrics: SolveMetrics::default(),
            trace: None,
        });
    }
    let mut out = match algo {
        Algorithm::WcAStar => wc_astar::run(g, inst, opts),
        Algorithm::WcBaStar => wc_ba_star::run(g, inst, opts),
        Algorithm::WcEbba => wc_ebba::run(g, inst, opts),
        Algorithm::WcEbbaPar => wc_ebba_par::run(g, inst, opts),
    }?;
    out.metrics.runtime_us = t0.elapsed().as_micros() as u64;
    Ok(out)
}

pub(crate) fn geo_for<'a>(g: &Graph, opts: &SolverOptions, slot: &'a mut Option<GeoHeuristic>) -> Option<&'a GeoHeuristic> {
    if opts.geo_heuristic {
        *slot = GeoHeuristic::new(g);
    }
    slot.as_ref()
}

/// Outcome for an initialisation that settled the instance on its own,
/// or `None` when a constrained search is required.
pub(crate) fn early_outcome(init: &InitOutcome, metrics: &SolveMetrics) -> Option<SolveOutcome> {
    match &init.status {
        InitStatus::Infeasible => Some(SolveOutcome {
            status: Status::Infeasible,
            costs: None,
            path: None,
            metrics: metrics.clone(),
            trace: None,
        }),
        InitStatus::Solved { cost, path } => Some(SolveOutcome {
            status: Status::Optimal,
            costs: Some(*cost),
            path: Some(erase_loops(path)),
            metrics: metrics.clone(),
            trace: None,
        }),
        InitStatus::Search => None,
    }
}

type Settled = (Status, Option<(Cost, Cost)>, Option<Vec<StateId>>);

/// Turns the final incumbent into a path and checks it against the
/// recorded costs.
pub(crate) fn finish(
    g: &Graph,
    tables: &BoundsTables,
    parents: [Option<&ParentArrays>; 2],
    inc: &Incumbent,
    timed_out: bool,
) -> Result<Settled, SolveError> {
    let path = match &inc.record {
        SolutionRecord::None => None,
        SolutionRecord::Initial(j) => Some(tables.join_path(j)),
        SolutionRecord::SingleNode(x) => {
            let arrays = parents[x.dir.index()].ok_or_else(|| SolveError::Internal("missing parent arrays".into()))?;
            let comp = tables
                .table(x.dir, x.primary)
                .ok_or_else(|| SolveError::Internal("missing complement table".into()))?;
            Some(reconstruct(arrays, (x.state, x.path_index), x.dir, comp))
        }
        SolutionRecord::NodePair { forward, backward } => {
            let (fa, ba) = match (parents[0], parents[1]) {
                (Some(f), Some(b)) => (f, b),
                _ => return Err(SolveError::Internal("missing parent arrays".into())),
            };
            Some(join_pair(fa, (forward.state, forward.path_index), ba, (backward.state, backward.path_index)))
        }
    };
    let path = path.map(|p| erase_loops(&p));
    if timed_out {
        let costs = path.as_ref().and_then(|p| g.path_cost(p));
        return Ok((Status::Timeout, costs, path));
    }
    let Some(path) = path else {
        if inc.f1_bar == crate::graph::INF {
            return Ok((Status::Infeasible, None, None));
        }
        return Err(SolveError::Internal(format!("bound {} has no recorded solution", inc.f1_bar)));
    };
    let costs = g
        .path_cost(&path)
        .ok_or_else(|| SolveError::Internal("reconstructed path uses a missing edge".into()))?;
    if costs != (inc.f1_bar, inc.f2_sol) {
        return Err(SolveError::Internal(format!(
            "path costs {costs:?} differ from incumbent ({}, {})",
            inc.f1_bar, inc.f2_sol
        )));
    }
    Ok((Status::Optimal, Some(costs), Some(path)))
}

pub(crate) fn fresh_bounds(inst: &ProblemInstance) -> GlobalBounds {
    GlobalBounds::new(inst.weight_limit)
}

/// Collects side metrics, rebuilds the path and assembles the outcome.
#[allow(clippy::too_many_arguments)]
pub(crate) fn conclude(
    g: &Graph,
    opts: &SolverOptions,
    mut metrics: SolveMetrics,
    tables: &BoundsTables,
    gb: &GlobalBounds,
    live: &LiveBounds,
    mut sides: Vec<engine::Side>,
    budget: Option<BudgetFactors>,
    limits: &engine::Limits,
) -> Result<SolveOutcome, SolveError> {
    for s in sides.iter_mut() {
        s.close();
        metrics.absorb(&s.metrics);
    }
    let inc = gb.snapshot();
    let mut parents: [Option<&ParentArrays>; 2] = [None, None];
    for s in &sides {
        parents[s.dir.index()] = Some(&s.parents);
    }
    let (status, costs, path) = finish(g, tables, parents, &inc, limits.is_hit())?;
    let trace = opts.trace.then(|| {
        let (final_h, final_ub) = live.snapshot();
        let mut t = SearchTrace {
            tables: tables.clone(),
            final_h,
            final_ub,
            incumbents: inc.history.clone(),
            budget,
            ..Default::default()
        };
        for s in sides.iter_mut() {
            let i = s.dir.index();
            t.events[i] = std::mem::take(&mut s.events);
            t.parents[i] = Some(s.parents.clone());
        }
        t
    });
    Ok(SolveOutcome {
        status,
        costs,
        path,
        metrics,
        trace,
    })
}

/// Runs one side until it finishes or a limit is hit. Returns `false` once
/// the side is done; `stop_all` makes its completion end the other side too.
pub(crate) fn drive(side: &mut engine::Side, sh: &engine::Shared<'_>, stop: &std::sync::atomic::AtomicBool, stop_all: bool) -> bool {
    use std::sync::atomic::Ordering;
    match side.step(sh) {
        engine::Tick::Continue => {
            if sh.limits.is_hit() {
                stop.store(true, Ordering::Release);
                return false;
            }
            true
        }
        engine::Tick::Finished => {
            if stop_all || sh.limits.is_hit() {
                stop.store(true, Ordering::Release);
            }
            false
        }
    }
}
