//! One constrained search direction and the procedures every solver shares.
//!
//! A [`Side`] owns its queue, node pool, parent arrays and `g_min` array.
//! Everything it shares with the opposite direction lives in [`Shared`].

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use parking_lot::Mutex;

use crate::bounds::{BudgetFactors, GlobalBounds, NodeSnap, ProblemInstance, SolutionRecord};
use crate::graph::{Attr, Cost, Direction, Graph, StateId, INF, NO_STATE};
use crate::nodepool::{NodeHandle, NodePool, ParentArrays, SearchNode};
use crate::pqueue::{Entry, FrontierQueue, QueueConfig, QueueError};

use super::live::LiveBounds;
use super::{SolveMetrics, SolverOptions};

/// A stored partial path: its costs and where to find it in the parent arrays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChiEntry {
    pub g1: Cost,
    pub g2: Cost,
    pub path_index: u32,
}

/// Per-state stored partial paths of both directions, one lock per state.
#[derive(Debug)]
pub(crate) struct ChiLists {
    lists: Vec<Mutex<[Vec<ChiEntry>; 2]>>,
}

impl ChiLists {
    pub fn new(n: usize) -> ChiLists {
        ChiLists {
            lists: (0..n).map(|_| Mutex::new([Vec::new(), Vec::new()])).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneReason {
    /// Weakly dominated by the last path expanded at the same state.
    Dominance,
    /// Dominated by a preliminary shortest path of the opposite direction.
    StateUpperBound,
    /// Lower bound beyond `(f1_bar, W)`.
    GlobalUpperBound,
}

/// What happened to one node, for traced solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceEvent {
    Pop { state: StateId, f: (Cost, Cost), g: (Cost, Cost) },
    Reinserted { state: StateId, f: (Cost, Cost) },
    Pruned { state: StateId, f: (Cost, Cost), g: (Cost, Cost), reason: PruneReason },
    Terminal { state: StateId },
    Expanded { state: StateId, g: (Cost, Cost) },
    /// The popped key exceeded the global bound and the search stopped.
    Stopped { f: (Cost, Cost), bound: Cost },
}

/// Expansion and time limits shared by every direction of one solve.
#[derive(Debug)]
pub(crate) struct Limits {
    deadline: Option<Instant>,
    max_expansions: Option<u64>,
    expansions: AtomicU64,
    pub hit: AtomicBool,
}

impl Limits {
    pub fn new(opts: &SolverOptions) -> Limits {
        Limits {
            deadline: opts.timeout.map(|t| Instant::now() + t),
            max_expansions: opts.max_expansions,
            expansions: AtomicU64::new(0),
            hit: AtomicBool::new(false),
        }
    }

    fn allow_expansion(&self) -> bool {
        if let Some(m) = self.max_expansions {
            if self.expansions.fetch_add(1, Ordering::Relaxed) >= m {
                self.hit.store(true, Ordering::Release);
                return false;
            }
        }
        true
    }

    fn check_clock(&self) {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.hit.store(true, Ordering::Release);
            }
        }
    }

    pub fn is_hit(&self) -> bool {
        self.hit.load(Ordering::Acquire)
    }
}

/// State shared between the directions of one solve.
pub(crate) struct Shared<'a> {
    pub g: &'a Graph,
    pub inst: ProblemInstance,
    pub live: &'a LiveBounds,
    pub gb: &'a GlobalBounds,
    pub valid: &'a [bool],
    /// Prune against the opposite direction's upper bounds.
    pub bidirectional: bool,
    pub htf: bool,
    pub budget: Option<BudgetFactors>,
    pub chi: Option<&'a ChiLists>,
    pub store_refinement: bool,
    pub trace: bool,
    pub limits: &'a Limits,
}

pub(crate) enum Tick {
    Continue,
    Finished,
}

#[inline]
fn get(pair: (Cost, Cost), a: Attr) -> Cost {
    match a {
        Attr::Cost1 => pair.0,
        Attr::Cost2 => pair.1,
    }
}

#[inline]
fn set(pair: &mut (Cost, Cost), a: Attr, v: Cost) {
    match a {
        Attr::Cost1 => pair.0 = v,
        Attr::Cost2 => pair.1 = v,
    }
}

/// One search direction in a fixed objective order `(p, s)`.
pub(crate) struct Side {
    pub dir: Direction,
    pub p: Attr,
    open: FrontierQueue,
    pool: NodePool,
    pub parents: ParentArrays,
    g_min: Vec<Cost>,
    pub metrics: SolveMetrics,
    pub events: Vec<TraceEvent>,
    pub finished: bool,
    no_ties: bool,
    pops_since_clock: u32,
}

impl Side {
    pub fn new(sh: &Shared<'_>, dir: Direction, p: Attr, opts: &SolverOptions) -> Result<Side, QueueError> {
        let n = sh.g.state_count();
        let init = match dir {
            Direction::Forward => sh.inst.start,
            Direction::Backward => sh.inst.goal,
        };
        let f = (sh.live.h(dir, Attr::Cost1, init), sh.live.h(dir, Attr::Cost2, init));
        let bar = Self::bar_of(sh, p);
        let fp = get(f, p);
        let admissible = sh.valid[init as usize] && f.0 <= sh.gb.f1() && f.1 <= sh.gb.f2();
        let open = FrontierQueue::new(QueueConfig {
            kind: opts.queue,
            f_min: if admissible { fp } else { 0 },
            f_max: if admissible { bar } else { 0 },
            delta_f: opts.delta_f,
            tie_policy: opts.tie_policy,
        })?;
        let mut side = Side {
            dir,
            p,
            open,
            pool: NodePool::new(),
            parents: ParentArrays::new(n),
            g_min: vec![INF; n],
            metrics: SolveMetrics::default(),
            events: Vec::new(),
            finished: false,
            no_ties: !opts.tie_policy.breaks_ties(),
            pops_since_clock: 0,
        };
        if admissible {
            let node = SearchNode {
                state: init,
                g: (0, 0),
                f,
                parent_state: NO_STATE,
                parent_path_id: 0,
            };
            let h = side.pool.allocate(node);
            side.open.push(fp, get(f, p.other()), h)?;
            side.metrics.generated += 1;
        } else {
            side.finished = true;
        }
        Ok(side)
    }

    #[inline]
    fn bar_of(sh: &Shared<'_>, a: Attr) -> Cost {
        match a {
            Attr::Cost1 => sh.gb.f1(),
            Attr::Cost2 => sh.gb.f2(),
        }
    }

    pub fn peek(&mut self) -> Option<Entry> {
        if self.finished {
            return None;
        }
        self.open.peek()
    }

    /// Pops and processes one node.
    pub fn step(&mut self, sh: &Shared<'_>) -> Tick {
        if self.finished {
            return Tick::Finished;
        }
        match self.open.pop() {
            Some(e) => self.process(sh, e),
            None => {
                self.finished = true;
                Tick::Finished
            }
        }
    }

    fn event(&mut self, sh: &Shared<'_>, e: TraceEvent) {
        if sh.trace {
            self.events.push(e);
        }
    }

    fn drop_node(&mut self, sh: &Shared<'_>, h: NodeHandle, reason: PruneReason) {
        let x = *self.pool.get(h);
        match reason {
            PruneReason::Dominance => self.metrics.pruned_dominance += 1,
            PruneReason::StateUpperBound => self.metrics.pruned_state_ub += 1,
            PruneReason::GlobalUpperBound => self.metrics.pruned_global_ub += 1,
        }
        self.event(
            sh,
            TraceEvent::Pruned {
                state: x.state,
                f: x.f,
                g: x.g,
                reason,
            },
        );
        self.pool.recycle(h);
    }

    fn process(&mut self, sh: &Shared<'_>, e: Entry) -> Tick {
        let h = e.payload;
        let (p, s) = (self.p, self.p.other());
        let d = self.dir;
        self.metrics.pops += 1;
        self.pops_since_clock += 1;
        if self.pops_since_clock >= 4096 {
            self.pops_since_clock = 0;
            sh.limits.check_clock();
        }
        let mut x = *self.pool.get(h);
        let u = x.state;
        self.event(sh, TraceEvent::Pop { state: u, f: x.f, g: x.g });

        if sh.htf {
            let fs = get(x.g, s).saturating_add(sh.live.h(d, s, u));
            if fs != get(x.f, s) {
                set(&mut x.f, s, fs);
                *self.pool.slot_mut(h) = x;
                self.metrics.reinserts += 1;
                self.event(sh, TraceEvent::Reinserted { state: u, f: x.f });
                self.open.push(get(x.f, p), fs, h).expect("reinsertion keeps the primary key");
                return Tick::Continue;
            }
        }

        let bar_p = Self::bar_of(sh, p);
        if get(x.f, p) > bar_p {
            self.event(sh, TraceEvent::Stopped { f: x.f, bound: bar_p });
            self.pool.recycle(h);
            self.finished = true;
            return Tick::Finished;
        }
        if get(x.f, s) > Self::bar_of(sh, s) {
            self.drop_node(sh, h, PruneReason::GlobalUpperBound);
            return Tick::Continue;
        }
        let gs = get(x.g, s);
        if gs >= self.g_min[u as usize] {
            self.drop_node(sh, h, PruneReason::Dominance);
            return Tick::Continue;
        }
        let first = self.g_min[u as usize] == INF;
        self.g_min[u as usize] = gs;
        self.metrics.explored += 1;
        let path_index = self.parents.record_expansion(u, x.parent_state, x.parent_path_id);
        if sh.htf && first {
            sh.live.tune(d.opposite(), p, u, get(x.g, p), gs);
        }
        let snap = NodeSnap {
            dir: d,
            primary: p,
            state: u,
            path_index,
            g: x.g,
        };
        self.esu(sh, &snap);

        if sh.live.h(d, p, u) == sh.live.ub(d, p, u) {
            self.metrics.terminal_skips += 1;
            self.event(sh, TraceEvent::Terminal { state: u });
            self.pool.recycle(h);
            return Tick::Continue;
        }

        let mut expand = true;
        if let Some(b) = sh.budget {
            let w = sh.gb.f2();
            if !b.within(d, x.g.1, w) {
                expand = false;
                self.metrics.budget_rejections += 1;
                if !b.within(d.opposite(), sh.live.h(d, Attr::Cost2, u), w) {
                    self.metrics.coupling_violations += 1;
                }
            }
        }
        if expand {
            if !sh.limits.allow_expansion() {
                self.pool.recycle(h);
                self.finished = true;
                return Tick::Finished;
            }
            self.expand(sh, &x, path_index);
        }
        if sh.chi.is_some() {
            self.couple(sh, &snap);
        }
        self.pool.recycle(h);
        Tick::Continue
    }

    /// Early solution update: joins the node with its two complementary
    /// shortest paths.
    fn esu(&self, sh: &Shared<'_>, x: &NodeSnap) {
        let (d, u) = (x.dir, x.state);
        let (g1, g2) = x.g;
        let lv = sh.live;
        let w = sh.gb.f2();
        let f1x = g1.saturating_add(lv.h(d, Attr::Cost1, u));
        let f2x = g2.saturating_add(lv.h(d, Attr::Cost2, u));
        let f1j = g1.saturating_add(lv.ub(d, Attr::Cost1, u));
        let f2j = g2.saturating_add(lv.ub(d, Attr::Cost2, u));
        match self.p {
            Attr::Cost1 => {
                if f2j <= w {
                    sh.gb.offer(f1x, f2j, || SolutionRecord::SingleNode(*x));
                } else if f2x <= w && f1j < sh.gb.f1() {
                    sh.gb.tighten(f1j);
                }
            }
            Attr::Cost2 => {
                if f1j <= sh.gb.f1() {
                    if f2x <= w {
                        sh.gb.offer(f1j, f2x, || SolutionRecord::SingleNode(*x));
                    }
                } else if f2j <= w && f1x < sh.gb.f1() {
                    sh.gb.tighten(f1x);
                }
            }
        }
    }

    fn expand(&mut self, sh: &Shared<'_>, x: &SearchNode, path_index: u32) {
        let (d, p, s) = (self.dir, self.p, self.p.other());
        let u = x.state;
        self.metrics.expansions += 1;
        self.event(sh, TraceEvent::Expanded { state: u, g: x.g });
        let lv = sh.live;
        let od = d.opposite();
        for arc in sh.g.successors(u, d) {
            let v = arc.target;
            if !sh.valid[v as usize] {
                continue;
            }
            let g = (x.g.0 + arc.cost1 as Cost, x.g.1 + arc.cost2 as Cost);
            let f = (
                g.0.saturating_add(lv.h(d, Attr::Cost1, v)),
                g.1.saturating_add(lv.h(d, Attr::Cost2, v)),
            );
            self.metrics.generated += 1;
            let reason = if get(g, s) >= self.g_min[v as usize] {
                Some(PruneReason::Dominance)
            } else if sh.bidirectional && (g.0 > lv.ub(od, Attr::Cost1, v) || g.1 > lv.ub(od, Attr::Cost2, v)) {
                Some(PruneReason::StateUpperBound)
            } else if f.0 > sh.gb.f1() || f.1 > sh.gb.f2() {
                Some(PruneReason::GlobalUpperBound)
            } else {
                None
            };
            if let Some(reason) = reason {
                match reason {
                    PruneReason::Dominance => self.metrics.pruned_dominance += 1,
                    PruneReason::StateUpperBound => self.metrics.pruned_state_ub += 1,
                    PruneReason::GlobalUpperBound => self.metrics.pruned_global_ub += 1,
                }
                self.event(sh, TraceEvent::Pruned { state: v, f, g, reason });
                continue;
            }
            let h = self.pool.allocate(SearchNode {
                state: v,
                g,
                f,
                parent_state: u,
                parent_path_id: path_index,
            });
            self.open
                .push(get(f, p), get(f, s), h)
                .expect("consistent heuristics keep keys inside the queue range");
        }
    }

    /// Match against the opposite direction's stored paths at the node's
    /// state, then store the node, if the state is in the coupling area.
    fn couple(&mut self, sh: &Shared<'_>, x: &NodeSnap) {
        let chi = sh.chi.expect("coupling needs stored path lists");
        let (d, u) = (x.dir, x.state);
        let od = d.opposite();
        let w = sh.gb.f2();
        let budget = sh.budget.expect("coupling needs budget factors");
        let reachable = budget.within(od, sh.live.h(d, Attr::Cost2, u), w);
        let mut lists = chi.lists[u as usize].lock();
        if !reachable && lists[od.index()].is_empty() {
            return;
        }
        for y in &lists[od.index()] {
            let f1 = x.g.0 + y.g1;
            if f1 > sh.gb.f1() {
                break;
            }
            let f2 = x.g.1 + y.g2;
            if f2 <= w {
                sh.gb.offer(f1, f2, || {
                    let other = NodeSnap {
                        dir: od,
                        primary: x.primary,
                        state: u,
                        path_index: y.path_index,
                        g: (y.g1, y.g2),
                    };
                    let (forward, backward) = match d {
                        Direction::Forward => (*x, other),
                        Direction::Backward => (other, *x),
                    };
                    SolutionRecord::NodePair { forward, backward }
                });
            }
        }
        let own = &mut lists[d.index()];
        if self.no_ties && sh.store_refinement && own.last().is_some_and(|z| z.g1 == x.g.0) {
            own.pop();
        }
        own.push(ChiEntry {
            g1: x.g.0,
            g2: x.g.1,
            path_index: x.path_index,
        });
        self.metrics.stored += 1;
    }

    /// Folds queue and pool counters into the metrics.
    pub fn close(&mut self) {
        self.metrics.queue = self.open.stats();
        self.metrics.pool_slots = self.pool.slots_created() as u64;
        self.metrics.peak_pool_blocks = self.pool.blocks() as u64;
    }
}
