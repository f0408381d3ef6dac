//! Seeded random instances shared by the integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wcsp::graph::{random_graph, Cost, Graph, StateId};
use wcsp::oracle::enumerate_pareto;
use wcsp::pqueue::{QueueKind, TiePolicy};

pub struct Case {
    pub graph_seed: u64,
    pub start: StateId,
    pub goal: StateId,
    /// Weight limits from infeasible to loose.
    pub limits: Vec<Cost>,
    /// Lexicographic constrained optimum for each limit.
    pub expected: Vec<Option<(Cost, Cost)>>,
}

pub struct Suite {
    pub graphs: Vec<Graph>,
    pub cases: Vec<Case>,
}

/// `count` random digraphs with at most `max_states` states and costs in
/// `[1, 10]`, one start-goal pair each, with a weight sweep per pair.
pub fn suite(seed: u64, count: usize, max_states: usize) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graphs = Vec::new();
    let mut cases = Vec::new();
    for i in 0..count {
        let n = rng.gen_range(4..=max_states);
        let m = rng.gen_range(n..=4 * n);
        let graph_seed = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
        let g = random_graph(n, m, 10, graph_seed);
        let start = rng.gen_range(0..n as StateId);
        let mut goal = rng.gen_range(0..n as StateId);
        if goal == start {
            goal = (goal + 1) % n as StateId;
        }
        let front = enumerate_pareto(&g, start, goal).expect("small graph");
        let mut limits = Vec::new();
        if let (Some(first), Some(last)) = (front.points.first(), front.points.last()) {
            let (h2, ub2) = (last.cost2, first.cost2);
            limits.extend([h2.saturating_sub(1), h2, (h2 + ub2) / 2, ub2 - 1, ub2]);
            let k = rng.gen_range(0..front.len());
            limits.push(front.points[k].cost2);
        } else {
            limits.push(rng.gen_range(1..50));
        }
        limits.sort_unstable();
        limits.dedup();
        let expected = limits
            .iter()
            .map(|&w| front.points.iter().find(|p| p.cost2 <= w).map(|p| (p.cost1, p.cost2)))
            .collect();
        graphs.push(g);
        cases.push(Case {
            graph_seed,
            start,
            goal,
            limits,
            expected,
        });
    }
    Suite { graphs, cases }
}

/// Every supported queue and tie-policy pairing.
pub const QUEUE_CONFIGS: [(QueueKind, TiePolicy); 6] = [
    (QueueKind::Bucket, TiePolicy::NoneLifo),
    (QueueKind::Bucket, TiePolicy::NoneFifo),
    (QueueKind::Hybrid, TiePolicy::NoneLifo),
    (QueueKind::Hybrid, TiePolicy::Secondary),
    (QueueKind::BinaryHeap, TiePolicy::NoneLifo),
    (QueueKind::BinaryHeap, TiePolicy::Secondary),
];
