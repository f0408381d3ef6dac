//! Bounded single-objective searches and the initialisation phases built on
//! them.
//!
//! A bounded search is a label-setting A* on one attribute that breaks ties
//! on the other. For every state it settles it records the optimal cost on
//! its attribute (a lower bound `h`) and the other attribute's cost along
//! that same path (an upper bound `ub`), plus a predecessor tree that walks
//! the path. It stops before settling any state whose key exceeds the
//! bound, and can be restricted to the states settled by an earlier search.
//!
//! A search that starts at `goal` and walks edges backwards produces the
//! tables of the *forward* direction (bounds on the distance to `goal`),
//! and vice versa.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_rational::Ratio;
use parking_lot::Mutex;

use crate::graph::{Attr, Cost, Direction, GeoHeuristic, Graph, StateId, INF, NO_STATE};
use crate::schedule::{run_pair, Schedule};

/// A start/goal query with its weight limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProblemInstance {
    pub start: StateId,
    pub goal: StateId,
    pub weight_limit: Cost,
}

/// Lower-bound source for a bounded search.
#[derive(Debug, Clone, Copy)]
pub enum Heuristic<'a> {
    Zero,
    /// Exact distances from an earlier search. `INF` excludes a state.
    Table(&'a [Cost]),
    /// Scaled great-circle distance to a fixed state.
    Geo(&'a GeoHeuristic, StateId),
}

impl Heuristic<'_> {
    #[inline]
    fn eval(&self, attr: Attr, u: StateId) -> Cost {
        match *self {
            Heuristic::Zero => 0,
            Heuristic::Table(t) => t[u as usize],
            Heuristic::Geo(geo, to) => geo.bound(attr, u, to),
        }
    }
}

/// Output of one bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTable {
    /// Direction whose bounds this table holds.
    pub dir: Direction,
    /// Attribute the search minimised.
    pub attr: Attr,
    /// Optimal `attr` cost from each settled state to the target (`INF` if unsettled).
    pub h: Vec<Cost>,
    /// The other attribute's cost along the same path.
    pub ub: Vec<Cost>,
    /// Next state on that path, `NO_STATE` at the search source.
    pub pred: Vec<StateId>,
    pub expanded: Vec<bool>,
    pub expansions: u64,
}

impl SearchTable {
    /// The stored path from `u` to the search source, starting at `u`.
    pub fn walk(&self, u: StateId) -> Vec<StateId> {
        assert!(self.expanded[u as usize], "state {u} was not settled");
        let mut out = vec![u];
        let mut s = u;
        while self.pred[s as usize] != NO_STATE {
            s = self.pred[s as usize];
            out.push(s);
        }
        out
    }

    /// The stored path as a `start`-to-`goal` ordered segment through `u`:
    /// `u .. goal` for forward tables and `start .. u` for backward ones.
    pub fn segment(&self, u: StateId) -> Vec<StateId> {
        let mut p = self.walk(u);
        if self.dir == Direction::Backward {
            p.reverse();
        }
        p
    }

    /// `(cost1, cost2)` of the stored path at `u`.
    pub fn pair(&self, u: StateId) -> (Cost, Cost) {
        let (h, ub) = (self.h[u as usize], self.ub[u as usize]);
        match self.attr {
            Attr::Cost1 => (h, ub),
            Attr::Cost2 => (ub, h),
        }
    }
}

/// Result of a single search step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Settled { state: StateId, gp: Cost, gs: Cost },
    Exhausted,
}

/// A bounded label-setting search that can be advanced one state at a time.
pub struct BoundedSearch<'a> {
    graph: &'a Graph,
    table_dir: Direction,
    attr: Attr,
    heuristic: Heuristic<'a>,
    allowed: Option<&'a [bool]>,
    heap: BinaryHeap<Reverse<(Cost, Cost, StateId)>>,
    gp: Vec<Cost>,
    gs: Vec<Cost>,
    pred: Vec<StateId>,
    expanded: Vec<bool>,
    expansions: u64,
    done: bool,
}

impl<'a> BoundedSearch<'a> {
    /// A search producing the `table_dir` bounds on `attr`. It starts at
    /// `goal` for forward tables and at `start` for backward tables.
    pub fn new(
        graph: &'a Graph,
        inst: &ProblemInstance,
        table_dir: Direction,
        attr: Attr,
        heuristic: Heuristic<'a>,
        allowed: Option<&'a [bool]>,
    ) -> Self {
        let n = graph.state_count();
        let source = match table_dir {
            Direction::Forward => inst.goal,
            Direction::Backward => inst.start,
        };
        let mut s = BoundedSearch {
            graph,
            table_dir,
            attr,
            heuristic,
            allowed,
            heap: BinaryHeap::new(),
            gp: vec![INF; n],
            gs: vec![INF; n],
            pred: vec![NO_STATE; n],
            expanded: vec![false; n],
            expansions: 0,
            done: false,
        };
        let h = heuristic.eval(attr, source);
        if allowed.is_none_or(|m| m[source as usize]) && h != INF {
            s.gp[source as usize] = 0;
            s.gs[source as usize] = 0;
            s.heap.push(Reverse((h, 0, source)));
        }
        s
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    pub fn is_expanded(&self, u: StateId) -> bool {
        self.expanded[u as usize]
    }

    /// Settles the next state unless its key exceeds `bound`.
    pub fn step(&mut self, bound: Cost) -> Step {
        if self.done {
            return Step::Exhausted;
        }
        let adj = self.table_dir.opposite();
        while let Some(Reverse((f, _, u))) = self.heap.pop() {
            if self.expanded[u as usize] {
                continue;
            }
            if f > bound {
                self.done = true;
                self.heap.clear();
                return Step::Exhausted;
            }
            self.expanded[u as usize] = true;
            self.expansions += 1;
            let (gp, gs) = (self.gp[u as usize], self.gs[u as usize]);
            for arc in self.graph.successors(u, adj) {
                let v = arc.target as usize;
                if self.expanded[v] || !self.allowed.is_none_or(|m| m[v]) {
                    continue;
                }
                let np = gp + arc.cost(self.attr);
                let ns = gs + arc.cost(self.attr.other());
                if (np, ns) < (self.gp[v], self.gs[v]) {
                    let h = self.heuristic.eval(self.attr, arc.target);
                    if h == INF {
                        continue;
                    }
                    self.gp[v] = np;
                    self.gs[v] = ns;
                    self.pred[v] = u;
                    self.heap.push(Reverse((np.saturating_add(h), ns, arc.target)));
                }
            }
            return Step::Settled { state: u, gp, gs };
        }
        self.done = true;
        Step::Exhausted
    }

    pub fn into_table(self) -> SearchTable {
        let mask = |v: Vec<Cost>| -> Vec<Cost> {
            v.into_iter()
                .zip(&self.expanded)
                .map(|(x, &e)| if e { x } else { INF })
                .collect()
        };
        let h = mask(self.gp.clone());
        let ub = mask(self.gs.clone());
        let pred = self
            .pred
            .iter()
            .zip(&self.expanded)
            .map(|(&p, &e)| if e { p } else { NO_STATE })
            .collect();
        SearchTable {
            dir: self.table_dir,
            attr: self.attr,
            h,
            ub,
            pred,
            expanded: self.expanded,
            expansions: self.expansions,
        }
    }
}

/// Runs a bounded search to completion with a fixed bound.
#[allow(clippy::too_many_arguments)]
pub fn bounded_sssp(
    graph: &Graph,
    inst: &ProblemInstance,
    table_dir: Direction,
    attr: Attr,
    heuristic: Heuristic<'_>,
    bound: Cost,
    allowed: Option<&[bool]>,
    mut on_settle: impl FnMut(StateId, Cost, Cost),
) -> SearchTable {
    let mut s = BoundedSearch::new(graph, inst, table_dir, attr, heuristic, allowed);
    while let Step::Settled { state, gp, gs } = s.step(bound) {
        on_settle(state, gp, gs);
    }
    s.into_table()
}

/// Where an initial solution found by path matching came from: a
/// `start .. state` segment of one table and a `state .. goal` segment of
/// another, identified by index into [`BoundsTables::tables`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InitialJoin {
    pub state: StateId,
    pub prefix: Option<usize>,
    pub suffix: Option<usize>,
}

/// A frozen reference to an expanded node: enough to backtrack its path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeSnap {
    pub dir: Direction,
    /// Primary attribute of the search that produced the node; a single
    /// node solution joins with that attribute's tree.
    pub primary: Attr,
    pub state: StateId,
    pub path_index: u32,
    pub g: (Cost, Cost),
}

/// The incumbent solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionRecord {
    None,
    /// Found during initialisation; rebuilt from the stored trees.
    Initial(InitialJoin),
    /// A node joined with a precomputed complement path.
    SingleNode(NodeSnap),
    /// A forward and a backward node meeting at the same state.
    NodePair { forward: NodeSnap, backward: NodeSnap },
}

/// Incumbent costs and record, guarded together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incumbent {
    pub f1_bar: Cost,
    pub f2_sol: Cost,
    pub record: SolutionRecord,
    /// Every `(f1_bar, f2_sol)` pair the incumbent has taken, in order.
    pub history: Vec<(Cost, Cost)>,
}

/// Global upper bounds shared by all searches of one solve.
///
/// `f1_bar` is mirrored in an atomic so hot loops can read it without
/// locking. It only ever decreases, so a stale read is merely less tight.
#[derive(Debug)]
pub struct GlobalBounds {
    f1_bar: AtomicU64,
    f2_bar: Cost,
    inner: Mutex<Incumbent>,
}

impl GlobalBounds {
    pub fn new(weight_limit: Cost) -> GlobalBounds {
        GlobalBounds {
            f1_bar: AtomicU64::new(INF),
            f2_bar: weight_limit,
            inner: Mutex::new(Incumbent {
                f1_bar: INF,
                f2_sol: INF,
                record: SolutionRecord::None,
                history: Vec::new(),
            }),
        }
    }

    #[inline]
    pub fn f1(&self) -> Cost {
        self.f1_bar.load(Ordering::Acquire)
    }

    #[inline]
    pub fn f2(&self) -> Cost {
        self.f2_bar
    }

    /// Replaces the incumbent if `(c1, c2)` is feasible and lexicographically
    /// smaller than `(f1_bar, f2_sol)`.
    pub fn offer(&self, c1: Cost, c2: Cost, record: impl FnOnce() -> SolutionRecord) -> bool {
        if c2 > self.f2_bar || c1 > self.f1() {
            return false;
        }
        let mut inc = self.inner.lock();
        if (c1, c2) < (inc.f1_bar, inc.f2_sol) {
            inc.f1_bar = c1;
            inc.f2_sol = c2;
            inc.record = record();
            inc.history.push((c1, c2));
            self.f1_bar.store(c1, Ordering::Release);
            true
        } else {
            false
        }
    }

    /// Lowers `f1_bar` without a solution record (the solution path is
    /// known to exist but is not tracked). Resets `f2_sol` to `INF`.
    pub fn tighten(&self, c1: Cost) -> bool {
        if c1 >= self.f1() {
            return false;
        }
        let mut inc = self.inner.lock();
        if c1 < inc.f1_bar {
            inc.f1_bar = c1;
            inc.f2_sol = INF;
            inc.record = SolutionRecord::None;
            inc.history.push((c1, INF));
            self.f1_bar.store(c1, Ordering::Release);
            true
        } else {
            false
        }
    }

    pub fn snapshot(&self) -> Incumbent {
        self.inner.lock().clone()
    }
}

/// The h/ub tables of both directions plus the reduced state set.
#[derive(Debug, Clone, Default)]
pub struct BoundsTables {
    /// Every search run during initialisation, in order.
    pub tables: Vec<SearchTable>,
    /// `slot[dir][attr]` = index of the table holding `h^dir_attr`.
    pub slot: [[Option<usize>; 2]; 2],
    /// Membership mask of the reduced state set.
    pub valid: Vec<bool>,
}

impl BoundsTables {
    pub fn table(&self, d: Direction, p: Attr) -> Option<&SearchTable> {
        self.slot[d.index()][p.index()].map(|i| &self.tables[i])
    }

    /// Lower bound `h^d_p(u)`; `INF` if unknown.
    pub fn h(&self, d: Direction, p: Attr, u: StateId) -> Cost {
        self.table(d, p).map_or(INF, |t| t.h[u as usize])
    }

    /// Upper bound `ub^d_p(u)`: the `p` cost of the path that is optimal on
    /// the other attribute.
    pub fn ub(&self, d: Direction, p: Attr, u: StateId) -> Cost {
        self.table(d, p.other()).map_or(INF, |t| t.ub[u as usize])
    }

    pub fn has_direction(&self, d: Direction) -> bool {
        self.slot[d.index()].iter().all(Option::is_some)
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|&&v| v).count()
    }

    /// Rebuilds an initial solution path from its stored segments.
    pub fn join_path(&self, j: &InitialJoin) -> Vec<StateId> {
        let mut path = match j.prefix {
            Some(i) => self.tables[i].segment(j.state),
            None => vec![j.state],
        };
        if let Some(i) = j.suffix {
            path.extend(self.tables[i].segment(j.state).into_iter().skip(1));
        }
        path
    }
}

/// Outcome of an initialisation phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitStatus {
    /// No path satisfies the weight limit.
    Infeasible,
    /// The cost1-shortest path already satisfies the limit.
    Solved { cost: (Cost, Cost), path: Vec<StateId> },
    /// A constrained search is needed.
    Search,
}

#[derive(Debug, Clone)]
pub struct InitOutcome {
    pub status: InitStatus,
    pub tables: BoundsTables,
    /// States settled across all initialisation searches.
    pub expansions: u64,
}

/// Knobs shared by the initialisation phases.
#[derive(Debug, Clone, Copy, Default)]
pub struct InitOptions<'a> {
    /// Great-circle heuristic for the uninformed searches, if coordinates exist.
    pub geo: Option<&'a GeoHeuristic>,
    /// Run the cost1 bounded searches before the cost2 ones.
    pub reversed_order: bool,
}

fn geo_or_zero<'a>(geo: Option<&'a GeoHeuristic>, to: StateId) -> Heuristic<'a> {
    geo.map_or(Heuristic::Zero, |g| Heuristic::Geo(g, to))
}

/// Offers every join of a settled label with the complements stored in
/// `opposite` at the same state.
fn match_label(
    gb: &GlobalBounds,
    own: (usize, Direction, Attr),
    opposite: &[(usize, &SearchTable)],
    u: StateId,
    gp: Cost,
    gs: Cost,
) {
    let (own_idx, own_dir, attr) = own;
    let g = match attr {
        Attr::Cost1 => (gp, gs),
        Attr::Cost2 => (gs, gp),
    };
    for &(idx, t) in opposite {
        if !t.expanded[u as usize] {
            continue;
        }
        let c = t.pair(u);
        let (c1, c2) = (g.0 + c.0, g.1 + c.1);
        gb.offer(c1, c2, || {
            let (prefix, suffix) = match own_dir {
                Direction::Backward => (Some(own_idx), Some(idx)),
                Direction::Forward => (Some(idx), Some(own_idx)),
            };
            SolutionRecord::Initial(InitialJoin { state: u, prefix, suffix })
        });
    }
}

fn seed_offer(gb: &GlobalBounds, inst: &ProblemInstance, idx: usize, u: StateId, gp: Cost, gs: Cost) {
    if u == inst.start {
        gb.offer(gs, gp, || {
            SolutionRecord::Initial(InitialJoin {
                state: inst.start,
                prefix: None,
                suffix: Some(idx),
            })
        });
    }
}

/// Keeps the states whose combined lower bounds fit within both global bounds.
fn reduce(tables: &mut BoundsTables, candidates: &[bool], gb: &GlobalBounds) {
    let f1 = gb.f1();
    let w = gb.f2();
    let n = candidates.len();
    let mut valid = vec![false; n];
    for u in 0..n as StateId {
        if !candidates[u as usize] {
            continue;
        }
        let s1 = tables
            .h(Direction::Forward, Attr::Cost1, u)
            .saturating_add(tables.h(Direction::Backward, Attr::Cost1, u));
        let s2 = tables
            .h(Direction::Forward, Attr::Cost2, u)
            .saturating_add(tables.h(Direction::Backward, Attr::Cost2, u));
        valid[u as usize] = s1 <= f1 && s2 <= w;
    }
    tables.valid = valid;
}

fn solved_from(t: &SearchTable, u: StateId) -> InitStatus {
    InitStatus::Solved {
        cost: t.pair(u),
        path: t.segment(u),
    }
}

/// Two backward searches feeding a forward-only constrained search: cost2
/// bounded by the weight limit, then cost1 bounded by the seed solution and
/// restricted to the first search's states.
pub fn init_unidirectional(g: &Graph, inst: &ProblemInstance, gb: &GlobalBounds, opts: InitOptions<'_>) -> InitOutcome {
    let w = gb.f2();
    let s = inst.start;
    let mut tables = BoundsTables::default();
    let fwd = Direction::Forward;
    let finish = |tables: BoundsTables, status| {
        let expansions = tables.tables.iter().map(|t| t.expansions).sum();
        InitOutcome {
            status,
            tables,
            expansions,
        }
    };

    if opts.reversed_order {
        // Plain A* on cost2 seeds f1_bar, then cost1 and cost2 bounded searches.
        let mut seed = BoundedSearch::new(g, inst, fwd, Attr::Cost2, geo_or_zero(opts.geo, s), None);
        while let Step::Settled { state, gp, gs } = seed.step(INF) {
            seed_offer(gb, inst, 0, state, gp, gs);
            if state == s {
                break;
            }
        }
        let seed = seed.into_table();
        let seed_ok = seed.expanded[s as usize] && seed.h[s as usize] <= w;
        tables.tables.push(seed);
        if !seed_ok {
            return finish(tables, InitStatus::Infeasible);
        }
        let t1 = bounded_sssp(g, inst, fwd, Attr::Cost1, geo_or_zero(opts.geo, s), gb.f1(), None, |_, _, _| {});
        tables.tables.push(t1);
        tables.slot[0][0] = Some(1);
        let t1 = &tables.tables[1];
        if t1.ub[s as usize] <= w {
            let st = solved_from(t1, s);
            return finish(tables, st);
        }
        let allowed = t1.expanded.clone();
        let t2 = bounded_sssp(g, inst, fwd, Attr::Cost2, geo_or_zero(opts.geo, s), w, Some(&allowed), |_, _, _| {});
        let ok = t2.expanded[s as usize];
        tables.tables.push(t2);
        tables.slot[0][1] = Some(2);
        if !ok {
            return finish(tables, InitStatus::Infeasible);
        }
        tables.valid = tables.tables[2].expanded.clone();
        return finish(tables, InitStatus::Search);
    }

    let t0 = bounded_sssp(g, inst, fwd, Attr::Cost2, geo_or_zero(opts.geo, s), w, None, |u, gp, gs| {
        seed_offer(gb, inst, 0, u, gp, gs)
    });
    let ok = t0.expanded[s as usize];
    tables.tables.push(t0);
    tables.slot[0][1] = Some(0);
    if !ok {
        return finish(tables, InitStatus::Infeasible);
    }
    let allowed = tables.tables[0].expanded.clone();
    let t1 = bounded_sssp(g, inst, fwd, Attr::Cost1, geo_or_zero(opts.geo, s), gb.f1(), Some(&allowed), |_, _, _| {});
    tables.tables.push(t1);
    tables.slot[0][0] = Some(1);
    let t1 = &tables.tables[1];
    if t1.ub[s as usize] <= w {
        let st = solved_from(t1, s);
        return finish(tables, st);
    }
    tables.valid = t1.expanded.clone();
    finish(tables, InitStatus::Search)
}

struct Round<'a> {
    table_dir: Direction,
    attr: Attr,
    heuristic: Heuristic<'a>,
    allowed: Option<&'a [bool]>,
    /// Dynamic cost1 bound instead of the weight limit.
    bound_f1: bool,
    /// Indices of opposite-direction tables to match against.
    joins: Vec<usize>,
}

fn run_round(g: &Graph, inst: &ProblemInstance, gb: &GlobalBounds, tables: &BoundsTables, round: Round<'_>) -> SearchTable {
    let own_idx = tables.tables.len();
    let opposite: Vec<(usize, &SearchTable)> = round.joins.iter().map(|&i| (i, &tables.tables[i])).collect();
    let mut s = BoundedSearch::new(g, inst, round.table_dir, round.attr, round.heuristic, round.allowed);
    loop {
        let bound = if round.bound_f1 { gb.f1() } else { gb.f2() };
        match s.step(bound) {
            Step::Settled { state, gp, gs } => {
                if own_idx == 0 {
                    seed_offer(gb, inst, own_idx, state, gp, gs);
                }
                match_label(gb, (own_idx, round.table_dir, round.attr), &opposite, state, gp, gs);
            }
            Step::Exhausted => break,
        }
    }
    s.into_table()
}

/// Four chained bounded searches filling both directions' tables. Each
/// search after the first is restricted to its predecessor's states and
/// matches its labels against the opposite direction's finished tables to
/// tighten `f1_bar`.
pub fn init_sequential_bidirectional(
    g: &Graph,
    inst: &ProblemInstance,
    gb: &GlobalBounds,
    opts: InitOptions<'_>,
) -> InitOutcome {
    use Attr::{Cost1, Cost2};
    use Direction::{Backward, Forward};
    let (s, goal) = (inst.start, inst.goal);
    let w = gb.f2();
    let mut tables = BoundsTables::default();
    let finish = |tables: BoundsTables, status| {
        let expansions = tables.tables.iter().map(|t| t.expansions).sum();
        InitOutcome {
            status,
            tables,
            expansions,
        }
    };

    if opts.reversed_order {
        let mut seed = BoundedSearch::new(g, inst, Forward, Cost2, geo_or_zero(opts.geo, s), None);
        while let Step::Settled { state, gp, gs } = seed.step(INF) {
            seed_offer(gb, inst, 0, state, gp, gs);
            if state == s {
                break;
            }
        }
        let seed = seed.into_table();
        let seed_ok = seed.expanded[s as usize] && seed.h[s as usize] <= w;
        tables.tables.push(seed);
        if !seed_ok {
            return finish(tables, InitStatus::Infeasible);
        }
        let b1 = run_round(g, inst, gb, &tables, Round {
            table_dir: Backward,
            attr: Cost1,
            heuristic: geo_or_zero(opts.geo, goal),
            allowed: None,
            bound_f1: true,
            joins: vec![0],
        });
        tables.tables.push(b1);
        tables.slot[Backward.index()][Cost1.index()] = Some(1);
        if tables.tables[1].expanded[goal as usize] && tables.tables[1].ub[goal as usize] <= w {
            let st = solved_from(&tables.tables[1], goal);
            return finish(tables, st);
        }
        let f1 = {
            let (h, allowed) = (&tables.tables[1].h, &tables.tables[1].expanded);
            run_round(g, inst, gb, &tables, Round {
                table_dir: Forward,
                attr: Cost1,
                heuristic: Heuristic::Table(h),
                allowed: Some(allowed),
                bound_f1: true,
                joins: vec![1],
            })
        };
        tables.tables.push(f1);
        tables.slot[Forward.index()][Cost1.index()] = Some(2);
        let f2 = {
            let allowed = &tables.tables[2].expanded;
            run_round(g, inst, gb, &tables, Round {
                table_dir: Forward,
                attr: Cost2,
                heuristic: geo_or_zero(opts.geo, s),
                allowed: Some(allowed),
                bound_f1: false,
                joins: vec![1],
            })
        };
        let ok = f2.expanded[s as usize];
        tables.tables.push(f2);
        tables.slot[Forward.index()][Cost2.index()] = Some(3);
        if !ok {
            return finish(tables, InitStatus::Infeasible);
        }
        let b2 = {
            let (h, allowed) = (&tables.tables[3].h, &tables.tables[3].expanded);
            run_round(g, inst, gb, &tables, Round {
                table_dir: Backward,
                attr: Cost2,
                heuristic: Heuristic::Table(h),
                allowed: Some(allowed),
                bound_f1: false,
                joins: vec![2, 3],
            })
        };
        tables.tables.push(b2);
        tables.slot[Backward.index()][Cost2.index()] = Some(4);
        let cand = tables.tables[4].expanded.clone();
        reduce(&mut tables, &cand, gb);
        return finish(tables, InitStatus::Search);
    }

    let f2 = run_round(g, inst, gb, &tables, Round {
        table_dir: Forward,
        attr: Cost2,
        heuristic: geo_or_zero(opts.geo, s),
        allowed: None,
        bound_f1: false,
        joins: vec![],
    });
    let ok = f2.expanded[s as usize];
    tables.tables.push(f2);
    tables.slot[Forward.index()][Cost2.index()] = Some(0);
    if !ok {
        return finish(tables, InitStatus::Infeasible);
    }
    let b2 = {
        let (h, allowed) = (&tables.tables[0].h, &tables.tables[0].expanded);
        run_round(g, inst, gb, &tables, Round {
            table_dir: Backward,
            attr: Cost2,
            heuristic: Heuristic::Table(h),
            allowed: Some(allowed),
            bound_f1: false,
            joins: vec![0],
        })
    };
    tables.tables.push(b2);
    tables.slot[Backward.index()][Cost2.index()] = Some(1);
    let b1 = {
        let allowed = &tables.tables[1].expanded;
        run_round(g, inst, gb, &tables, Round {
            table_dir: Backward,
            attr: Cost1,
            heuristic: geo_or_zero(opts.geo, goal),
            allowed: Some(allowed),
            bound_f1: true,
            joins: vec![0],
        })
    };
    tables.tables.push(b1);
    tables.slot[Backward.index()][Cost1.index()] = Some(2);
    if tables.tables[2].expanded[goal as usize] && tables.tables[2].ub[goal as usize] <= w {
        let st = solved_from(&tables.tables[2], goal);
        return finish(tables, st);
    }
    let f1 = {
        let (h, allowed) = (&tables.tables[2].h, &tables.tables[2].expanded);
        run_round(g, inst, gb, &tables, Round {
            table_dir: Forward,
            attr: Cost1,
            heuristic: Heuristic::Table(h),
            allowed: Some(allowed),
            bound_f1: true,
            joins: vec![1, 2],
        })
    };
    tables.tables.push(f1);
    tables.slot[Forward.index()][Cost1.index()] = Some(3);
    let cand = tables.tables[3].expanded.clone();
    reduce(&mut tables, &cand, gb);
    finish(tables, InitStatus::Search)
}

/// Two rounds of two concurrent bounded searches.
///
/// Round one runs a backward cost2 search bounded by the weight limit next
/// to a forward cost1 search that becomes bounded once the first search has
/// seeded `f1_bar`. Round two mirrors them with the round-one tables as
/// heuristics, restricted to states both round-one searches settled, and
/// matches labels against the round-one tables.
pub fn init_parallel_bidirectional(
    g: &Graph,
    inst: &ProblemInstance,
    gb: &GlobalBounds,
    opts: InitOptions<'_>,
    schedule: Schedule,
) -> InitOutcome {
    use Attr::{Cost1, Cost2};
    use Direction::{Backward, Forward};
    let (s, goal) = (inst.start, inst.goal);
    let w = gb.f2();
    let mut tables = BoundsTables::default();

    let stop = AtomicBool::new(false);
    let mut r1a = BoundedSearch::new(g, inst, Forward, Cost2, geo_or_zero(opts.geo, s), None);
    let mut r1b = BoundedSearch::new(g, inst, Backward, Cost1, geo_or_zero(opts.geo, goal), None);
    let solved_early = AtomicBool::new(false);
    run_pair(
        schedule,
        &stop,
        || match r1a.step(w) {
            Step::Settled { state, gp, gs } => {
                seed_offer(gb, inst, 0, state, gp, gs);
                true
            }
            Step::Exhausted => {
                if !r1a.is_expanded(s) {
                    stop.store(true, Ordering::Release);
                }
                false
            }
        },
        || match r1b.step(gb.f1()) {
            Step::Settled { state, gs, .. } => {
                if state == goal && gs <= w {
                    solved_early.store(true, Ordering::Release);
                    stop.store(true, Ordering::Release);
                }
                true
            }
            Step::Exhausted => false,
        },
    );
    let (t0, t1) = (r1a.into_table(), r1b.into_table());
    let start_ok = t0.expanded[s as usize];
    tables.tables.push(t0);
    tables.tables.push(t1);
    tables.slot[Forward.index()][Cost2.index()] = Some(0);
    tables.slot[Backward.index()][Cost1.index()] = Some(1);
    let finish = |tables: BoundsTables, status| {
        let expansions = tables.tables.iter().map(|t| t.expansions).sum();
        InitOutcome {
            status,
            tables,
            expansions,
        }
    };
    if solved_early.load(Ordering::Acquire) {
        let st = solved_from(&tables.tables[1], goal);
        return finish(tables, st);
    }
    if !start_ok {
        return finish(tables, InitStatus::Infeasible);
    }

    let allowed: Vec<bool> = tables.tables[0]
        .expanded
        .iter()
        .zip(&tables.tables[1].expanded)
        .map(|(&a, &b)| a && b)
        .collect();
    let (t2, t3) = {
        let (tf2, tb1) = (&tables.tables[0], &tables.tables[1]);
        let mut r2a = BoundedSearch::new(g, inst, Backward, Cost2, Heuristic::Table(&tf2.h), Some(&allowed));
        let mut r2b = BoundedSearch::new(g, inst, Forward, Cost1, Heuristic::Table(&tb1.h), Some(&allowed));
        let stop = AtomicBool::new(false);
        let (opp_a, opp_b) = ([(0usize, tf2)], [(1usize, tb1)]);
        run_pair(
            schedule,
            &stop,
            || match r2a.step(w) {
                Step::Settled { state, gp, gs } => {
                    match_label(gb, (2, Backward, Cost2), &opp_a, state, gp, gs);
                    true
                }
                Step::Exhausted => false,
            },
            || match r2b.step(gb.f1()) {
                Step::Settled { state, gp, gs } => {
                    match_label(gb, (3, Forward, Cost1), &opp_b, state, gp, gs);
                    true
                }
                Step::Exhausted => false,
            },
        );
        (r2a.into_table(), r2b.into_table())
    };
    tables.tables.push(t2);
    tables.tables.push(t3);
    tables.slot[Backward.index()][Cost2.index()] = Some(2);
    tables.slot[Forward.index()][Cost1.index()] = Some(3);
    let t3 = &tables.tables[3];
    if t3.expanded[s as usize] && t3.ub[s as usize] <= w {
        let st = solved_from(t3, s);
        return finish(tables, st);
    }
    let cand: Vec<bool> = tables.tables[2]
        .expanded
        .iter()
        .zip(&tables.tables[3].expanded)
        .map(|(&a, &b)| a || b)
        .collect();
    reduce(&mut tables, &cand, gb);
    finish(tables, InitStatus::Search)
}

/// Fractions of the weight limit each direction may spend before it stops
/// expanding. They always sum to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetFactors {
    pub beta_f: Ratio<i128>,
    pub beta_b: Ratio<i128>,
}

impl BudgetFactors {
    pub fn get(&self, d: Direction) -> Ratio<i128> {
        match d {
            Direction::Forward => self.beta_f,
            Direction::Backward => self.beta_b,
        }
    }

    /// Whether `x <= beta^d * w`, evaluated exactly.
    pub fn within(&self, d: Direction, x: Cost, w: Cost) -> bool {
        let b = self.get(d);
        (x as i128) * b.denom() <= b.numer() * (w as i128)
    }
}

/// Budget factors from the two directions' summed cost1 lower bounds.
/// The direction with the smaller sum gets
/// `min(1, 0.5 * larger / smaller)`, the other gets the rest. A zero
/// smaller sum splits the budget evenly.
pub fn budget_from_sums(sum_f: u128, sum_b: u128) -> BudgetFactors {
    let half = Ratio::new(1i128, 2);
    let one = Ratio::from_integer(1i128);
    let (small, large, small_is_f) = if sum_f <= sum_b {
        (sum_f, sum_b, true)
    } else {
        (sum_b, sum_f, false)
    };
    let beta_small = if small == 0 {
        half
    } else {
        (half * Ratio::new(large as i128, small as i128)).min(one)
    };
    let beta_large = one - beta_small;
    if small_is_f {
        BudgetFactors {
            beta_f: beta_small,
            beta_b: beta_large,
        }
    } else {
        BudgetFactors {
            beta_f: beta_large,
            beta_b: beta_small,
        }
    }
}

/// Budget factors over the states in `valid`.
pub fn budget_factors(valid: &[bool], h_f1: &[Cost], h_b1: &[Cost]) -> BudgetFactors {
    let (mut sf, mut sb) = (0u128, 0u128);
    for u in 0..valid.len() {
        if valid[u] {
            sf += h_f1[u] as u128;
            sb += h_b1[u] as u128;
        }
    }
    budget_from_sums(sf, sb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::example_graph;

    fn inst(w: Cost) -> ProblemInstance {
        ProblemInstance {
            start: 0,
            goal: 4,
            weight_limit: w,
        }
    }

    #[test]
    fn example_backward_cost2_tables() {
        let g = example_graph();
        let t = bounded_sssp(&g, &inst(6), Direction::Forward, Attr::Cost2, Heuristic::Zero, INF, None, |_, _, _| {});
        assert_eq!(t.h, vec![3, 3, 1, 2, 0]);
        assert_eq!(t.ub, vec![7, 3, 2, 4, 0]);
        assert_eq!(t.walk(0), vec![0, 3, 2, 4]);
    }

    #[test]
    fn example_backward_cost1_tables() {
        let g = example_graph();
        let t = bounded_sssp(&g, &inst(6), Direction::Forward, Attr::Cost1, Heuristic::Zero, INF, None, |_, _, _| {});
        assert_eq!(t.h, vec![3, 2, 2, 3, 0]);
        assert_eq!(t.ub, vec![8, 4, 1, 3, 0]);
    }

    #[test]
    fn isolated_source() {
        let g = Graph::from_edges(3, &[(0, 1, 1, 1)]).unwrap();
        let i = ProblemInstance {
            start: 0,
            goal: 2,
            weight_limit: 5,
        };
        let t = bounded_sssp(&g, &i, Direction::Forward, Attr::Cost1, Heuristic::Zero, INF, None, |_, _, _| {});
        assert_eq!(t.h, vec![INF, INF, 0]);
    }

    #[test]
    fn unidirectional_init_on_example() {
        let g = example_graph();
        let gb = GlobalBounds::new(6);
        let out = init_unidirectional(&g, &inst(6), &gb, InitOptions::default());
        assert_eq!(out.status, InitStatus::Search);
        assert_eq!(gb.f1(), 7);
        assert_eq!(out.tables.valid_count(), 5);
        assert_eq!(out.tables.h(Direction::Forward, Attr::Cost1, 2), 2);
        assert_eq!(out.tables.ub(Direction::Forward, Attr::Cost1, 2), 2);

        let gb = GlobalBounds::new(2);
        assert_eq!(init_unidirectional(&g, &inst(2), &gb, InitOptions::default()).status, InitStatus::Infeasible);

        let gb = GlobalBounds::new(8);
        match init_unidirectional(&g, &inst(8), &gb, InitOptions::default()).status {
            InitStatus::Solved { cost, path } => {
                assert_eq!(cost, (3, 8));
                assert_eq!(path, vec![0, 1, 4]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn budget_examples() {
        let half = Ratio::new(1, 2);
        assert_eq!(budget_from_sums(100, 100), BudgetFactors { beta_f: half, beta_b: half });
        let b = budget_from_sums(100, 300);
        assert_eq!((b.beta_f, b.beta_b), (Ratio::from_integer(1), Ratio::from_integer(0)));
        let b = budget_from_sums(200, 100);
        assert_eq!((b.beta_f, b.beta_b), (Ratio::from_integer(0), Ratio::from_integer(1)));
        let b = budget_from_sums(300, 200);
        assert_eq!((b.beta_f, b.beta_b), (Ratio::new(1, 4), Ratio::new(3, 4)));
        assert_eq!(budget_from_sums(0, 0).beta_f, half);
    }

    #[test]
    fn offer_is_lexicographic() {
        let gb = GlobalBounds::new(10);
        assert!(gb.offer(7, 8, || SolutionRecord::None));
        assert!(!gb.offer(7, 9, || SolutionRecord::None));
        assert!(gb.offer(7, 5, || SolutionRecord::None));
        assert!(!gb.offer(6, 11, || SolutionRecord::None));
        assert!(gb.tighten(6));
        assert_eq!(gb.snapshot().history, vec![(7, 8), (7, 5), (6, INF)]);
    }
}
