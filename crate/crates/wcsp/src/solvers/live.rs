//! Bounds tables shared by running searches.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::bounds::BoundsTables;
use crate::graph::{Attr, Cost, Direction, StateId, INF};

/// Per-state values indexed `[direction][attribute]`.
pub type BoundGrid = [[Vec<Cost>; 2]; 2];

/// `h^d_p` and `ub^d_p` as atomics so one search can tune the other's
/// bounds while both run. Relaxed ordering suffices: every entry is written
/// by at most one search and a stale read only weakens pruning.
#[derive(Debug)]
pub struct LiveBounds {
    h: [[Vec<AtomicU64>; 2]; 2],
    ub: [[Vec<AtomicU64>; 2]; 2],
}

fn atomics(v: Option<&Vec<Cost>>, n: usize) -> Vec<AtomicU64> {
    match v {
        Some(v) => v.iter().map(|&x| AtomicU64::new(x)).collect(),
        None => (0..n).map(|_| AtomicU64::new(INF)).collect(),
    }
}

impl LiveBounds {
    pub fn from_tables(t: &BoundsTables, n: usize) -> LiveBounds {
        let build = |d: Direction, p: Attr, upper: bool| {
            if upper {
                atomics(t.table(d, p.other()).map(|x| &x.ub), n)
            } else {
                atomics(t.table(d, p).map(|x| &x.h), n)
            }
        };
        let per_dir = |d: Direction, upper: bool| [build(d, Attr::Cost1, upper), build(d, Attr::Cost2, upper)];
        LiveBounds {
            h: [per_dir(Direction::Forward, false), per_dir(Direction::Backward, false)],
            ub: [per_dir(Direction::Forward, true), per_dir(Direction::Backward, true)],
        }
    }

    #[inline]
    pub fn h(&self, d: Direction, p: Attr, u: StateId) -> Cost {
        self.h[d.index()][p.index()][u as usize].load(Ordering::Relaxed)
    }

    #[inline]
    pub fn ub(&self, d: Direction, p: Attr, u: StateId) -> Cost {
        self.ub[d.index()][p.index()][u as usize].load(Ordering::Relaxed)
    }

    /// Replaces direction `d`'s bounds at `u` with the costs of a path the
    /// opposite search found first in `p`-major order: `h^d_p = gp` and
    /// `ub^d_s = gs`, the companion pair of the cost-`p` tree.
    pub fn tune(&self, d: Direction, p: Attr, u: StateId, gp: Cost, gs: Cost) {
        self.h[d.index()][p.index()][u as usize].store(gp, Ordering::Relaxed);
        self.ub[d.index()][p.other().index()][u as usize].store(gs, Ordering::Relaxed);
    }

    /// Plain copies of `(h, ub)`.
    pub fn snapshot(&self) -> (BoundGrid, BoundGrid) {
        let read = |v: &Vec<AtomicU64>| v.iter().map(|a| a.load(Ordering::Relaxed)).collect::<Vec<_>>();
        let grid = |g: &[[Vec<AtomicU64>; 2]; 2]| [[read(&g[0][0]), read(&g[0][1])], [read(&g[1][0]), read(&g[1][1])]];
        (grid(&self.h), grid(&self.ub))
    }
}
