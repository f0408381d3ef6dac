//! Brute-force reference answers for small graphs.
//!
//! The oracle shares no search code with the solvers. It runs a FIFO
//! label-correcting search that keeps the full set of non-dominated cost
//! pairs at every state and uses no heuristics or bounds.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Cost, Direction, Graph, StateId, NO_STATE};

/// Largest graph the oracle accepts.
pub const MAX_ORACLE_STATES: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {states} states; the oracle accepts at most {limit}")]
    TooLarge { states: usize, limit: usize },
    #[error("state {0} is out of range")]
    StateOutOfRange(StateId),
}

/// One point of a Pareto frontier and a path that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoPoint {
    pub cost1: Cost,
    pub cost2: Cost,
    pub path: Vec<StateId>,
}

/// Cost-unique Pareto frontier sorted by increasing `cost1` (and therefore
/// strictly decreasing `cost2`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParetoSet {
    pub points: Vec<ParetoPoint>,
}

impl ParetoSet {
    pub fn costs(&self) -> Vec<(Cost, Cost)> {
        self.points.iter().map(|p| (p.cost1, p.cost2)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
}

#[derive(Clone, Copy)]
struct Label {
    c1: Cost,
    c2: Cost,
    pred_state: StateId,
    pred_label: u32,
    alive: bool,
}

struct LabelSets {
    labels: Vec<Vec<Label>>,
}

fn check(g: &Graph, states: &[StateId]) -> Result<(), OracleError> {
    if g.state_count() > MAX_ORACLE_STATES {
        return Err(OracleError::TooLarge {
            states: g.state_count(),
            limit: MAX_ORACLE_STATES,
        });
    }
    for &s in states {
        if s as usize >= g.state_count() {
            return Err(OracleError::StateOutOfRange(s));
        }
    }
    Ok(())
}

fn label_correcting(g: &Graph, source: StateId, dir: Direction) -> LabelSets {
    let mut labels: Vec<Vec<Label>> = vec![Vec::new(); g.state_count()];
    labels[source as usize].push(Label {
        c1: 0,
        c2: 0,
        pred_state: NO_STATE,
        pred_label: 0,
        alive: true,
    });
    let mut open = VecDeque::from([(source, 0u32)]);
    while let Some((u, li)) = open.pop_front() {
        let lab = labels[u as usize][li as usize];
        if !lab.alive {
            continue;
        }
        for arc in g.successors(u, dir) {
            let c1 = lab.c1 + arc.cost1 as Cost;
            let c2 = lab.c2 + arc.cost2 as Cost;
            let set = &mut labels[arc.target as usize];
            if set.iter().any(|l| l.alive && l.c1 <= c1 && l.c2 <= c2) {
                continue;
            }
            for l in set.iter_mut().filter(|l| l.alive && c1 <= l.c1 && c2 <= l.c2) {
                l.alive = false;
            }
            set.push(Label {
                c1,
                c2,
                pred_state: u,
                pred_label: li,
                alive: true,
            });
            open.push_back((arc.target, (set.len() - 1) as u32));
        }
    }
    LabelSets { labels }
}

impl LabelSets {
    /// States from the source to `u` following the back-pointers.
    fn trace(&self, mut u: StateId, mut li: u32) -> Vec<StateId> {
        let mut out = vec![u];
        loop {
            let l = self.labels[u as usize][li as usize];
            if l.pred_state == NO_STATE {
                break;
            }
            u = l.pred_state;
            li = l.pred_label;
            out.push(u);
        }
        out.reverse();
        out
    }

    fn frontier(&self, u: StateId) -> Vec<(Cost, Cost, u32)> {
        let mut v: Vec<_> = self.labels[u as usize]
            .iter()
            .enumerate()
            .filter(|(_, l)| l.alive)
            .map(|(i, l)| (l.c1, l.c2, i as u32))
            .collect();
        v.sort_unstable();
        v
    }
}

/// Exact cost-unique Pareto frontier of `start`-`goal` paths.
pub fn enumerate_pareto(g: &Graph, start: StateId, goal: StateId) -> Result<ParetoSet, OracleError> {
    check(g, &[start, goal])?;
    let sets = label_correcting(g, start, Direction::Forward);
    let points = sets
        .frontier(goal)
        .into_iter()
        .map(|(cost1, cost2, li)| ParetoPoint {
            cost1,
            cost2,
            path: sets.trace(goal, li),
        })
        .collect();
    Ok(ParetoSet { points })
}

/// Lexicographically smallest `(cost1, cost2)` over paths with
/// `cost2 <= weight_limit`, or `None` when no such path exists.
pub fn constrained_optimum(
    g: &Graph,
    start: StateId,
    goal: StateId,
    weight_limit: Cost,
) -> Result<Option<(Cost, Cost)>, OracleError> {
    let set = enumerate_pareto(g, start, goal)?;
    Ok(set
        .points
        .iter()
        .find(|p| p.cost2 <= weight_limit)
        .map(|p| (p.cost1, p.cost2)))
}

/// Non-dominated cost pairs between `source` and every state, sorted by
/// `cost1`. With `Forward` these are paths from `source` to the state; with
/// `Backward` they are paths from the state to `source`.
pub fn pareto_labels(g: &Graph, source: StateId, dir: Direction) -> Result<Vec<Vec<(Cost, Cost)>>, OracleError> {
    check(g, &[source])?;
    let sets = label_correcting(g, source, dir);
    Ok((0..g.state_count() as StateId)
        .map(|u| sets.frontier(u).into_iter().map(|(a, b, _)| (a, b)).collect())
        .collect())
}

/// Plain single-objective distances between `source` and every state,
/// derived from the Pareto labels (the minimum of each coordinate).
pub fn distances(g: &Graph, source: StateId, dir: Direction) -> Result<[Vec<Cost>; 2], OracleError> {
    let labels = pareto_labels(g, source, dir)?;
    let min_of = |f: fn(&(Cost, Cost)) -> Cost| -> Vec<Cost> {
        labels
            .iter()
            .map(|set| set.iter().map(f).min().unwrap_or(crate::graph::INF))
            .collect()
    };
    Ok([min_of(|p| p.0), min_of(|p| p.1)])
}
