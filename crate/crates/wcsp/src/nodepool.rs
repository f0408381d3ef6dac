//! Search-node storage with slot recycling, plus the compact parent arrays
//! used to rebuild solution paths after node memory has been reused.
//!
//! Nodes live in fixed-size blocks of [`BLOCK_SIZE`] slots. A node that has
//! been expanded or pruned is handed back with [`NodePool::recycle`] and its
//! slot is reused by the next allocation. The path information a node
//! carried survives in [`ParentArrays`]: each state owns two growing arrays,
//! and entry `i` describes the `i`-th successful expansion of that state.

use std::collections::VecDeque;

use crate::bounds::SearchTable;
use crate::graph::{Cost, Direction, StateId, NO_STATE};

/// Slots per block (about 1 MB of nodes).
pub const BLOCK_SIZE: usize = 16_384;

/// Handle to a pooled node.
pub type NodeHandle = u32;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchNode {
    pub state: StateId,
    pub g: (Cost, Cost),
    pub f: (Cost, Cost),
    /// State of the parent node, `NO_STATE` for the initial node.
    pub parent_state: StateId,
    /// 1-based index into the parent state's arrays, 0 for the initial node.
    pub parent_path_id: u32,
}

#[derive(Debug, Default)]
pub struct NodePool {
    blocks: Vec<Vec<SearchNode>>,
    /// Recycled slots, reused oldest first.
    free: VecDeque<NodeHandle>,
    in_use: Vec<bool>,
    live: usize,
    peak_live: usize,
}

impl NodePool {
    pub fn new() -> NodePool {
        NodePool::default()
    }

    /// Stores `node` in a recycled slot if one exists, otherwise in a fresh one.
    pub fn allocate(&mut self, node: SearchNode) -> NodeHandle {
        let h = match self.free.pop_front() {
            Some(h) => {
                *self.slot_mut(h) = node;
                h
            }
            None => {
                if self.blocks.last().is_none_or(|b| b.len() == BLOCK_SIZE) {
                    self.blocks.push(Vec::with_capacity(BLOCK_SIZE));
                }
                let block = self.blocks.len() - 1;
                let b = self.blocks.last_mut().expect("block just ensured");
                b.push(node);
                self.in_use.push(false);
                (block * BLOCK_SIZE + b.len() - 1) as NodeHandle
            }
        };
        debug_assert!(!self.in_use[h as usize], "slot handed out twice");
        self.in_use[h as usize] = true;
        self.live += 1;
        self.peak_live = self.peak_live.max(self.live);
        h
    }

    /// Returns a slot to the free list.
    pub fn recycle(&mut self, h: NodeHandle) {
        assert!(self.in_use[h as usize], "double recycle of slot {h}");
        self.in_use[h as usize] = false;
        self.live -= 1;
        self.free.push_back(h);
    }

    #[inline]
    pub fn get(&self, h: NodeHandle) -> &SearchNode {
        let h = h as usize;
        &self.blocks[h / BLOCK_SIZE][h % BLOCK_SIZE]
    }

    #[inline]
    pub fn slot_mut(&mut self, h: NodeHandle) -> &mut SearchNode {
        let h = h as usize;
        &mut self.blocks[h / BLOCK_SIZE][h % BLOCK_SIZE]
    }

    /// Distinct slots ever created.
    pub fn slots_created(&self) -> usize {
        self.in_use.len()
    }

    pub fn blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn live(&self) -> usize {
        self.live
    }

    pub fn peak_live(&self) -> usize {
        self.peak_live
    }
}

/// Per-state `parent_state` / `parent_path_id` arrays for one search direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParentArrays {
    parent_state: Vec<Vec<StateId>>,
    parent_path_id: Vec<Vec<u32>>,
}

impl ParentArrays {
    pub fn new(state_count: usize) -> ParentArrays {
        ParentArrays {
            parent_state: vec![Vec::new(); state_count],
            parent_path_id: vec![Vec::new(); state_count],
        }
    }

    /// Appends one expansion of `state` and returns its 1-based index.
    pub fn record_expansion(&mut self, state: StateId, parent_state: StateId, parent_path_id: u32) -> u32 {
        debug_assert!(
            parent_path_id == 0 || (parent_path_id as usize) <= self.parent_state[parent_state as usize].len(),
            "dangling parent path id"
        );
        let s = state as usize;
        self.parent_state[s].push(parent_state);
        self.parent_path_id[s].push(parent_path_id);
        self.parent_state[s].len() as u32
    }

    /// The arrays of one state. `NO_STATE` marks the initial node.
    pub fn entries(&self, state: StateId) -> (&[StateId], &[u32]) {
        (&self.parent_state[state as usize], &self.parent_path_id[state as usize])
    }

    /// Follows back-pointers from `(state, path_index)` to the initial state.
    /// The result starts at the initial state and ends at `state`.
    pub fn backtrack(&self, state: StateId, path_index: u32) -> Vec<StateId> {
        let mut out = vec![state];
        let (mut s, mut i) = (state, path_index);
        loop {
            assert!(
                i >= 1 && (i as usize) <= self.parent_state[s as usize].len(),
                "dangling path index {i} at state {s}"
            );
            let ps = self.parent_state[s as usize][i as usize - 1];
            let pi = self.parent_path_id[s as usize][i as usize - 1];
            if ps == NO_STATE {
                break;
            }
            out.push(ps);
            s = ps;
            i = pi;
        }
        out.reverse();
        out
    }

    /// Total number of recorded expansions.
    pub fn total_entries(&self) -> usize {
        self.parent_state.iter().map(Vec::len).sum()
    }
}

/// Rebuilds a `start`-to-`goal` path from a single terminal node of a search
/// in direction `dir` and the complementary shortest-path tree `complement`
/// of that direction.
pub fn reconstruct(arrays: &ParentArrays, terminal: (StateId, u32), dir: Direction, complement: &SearchTable) -> Vec<StateId> {
    let (u, idx) = terminal;
    let partial = arrays.backtrack(u, idx);
    let rest = complement.segment(u);
    match dir {
        Direction::Forward => partial.into_iter().chain(rest.into_iter().skip(1)).collect(),
        Direction::Backward => rest.into_iter().chain(partial.into_iter().rev().skip(1)).collect(),
    }
}

/// Joins a forward and a backward partial path that end at the same state.
pub fn join_pair(forward: &ParentArrays, f: (StateId, u32), backward: &ParentArrays, b: (StateId, u32)) -> Vec<StateId> {
    debug_assert_eq!(f.0, b.0, "joined nodes must share a state");
    let mut path = forward.backtrack(f.0, f.1);
    path.extend(backward.backtrack(b.0, b.1).into_iter().rev().skip(1));
    path
}

/// Removes cycles from a state sequence, keeping its first and last states.
/// With non-negative costs the result never costs more than the input.
pub fn erase_loops(path: &[StateId]) -> Vec<StateId> {
    let mut out: Vec<StateId> = Vec::with_capacity(path.len());
    let mut pos = std::collections::HashMap::new();
    for &s in path {
        if let Some(&i) = pos.get(&s) {
            for removed in out.drain(i + 1..) {
                pos.remove(&removed);
            }
        } else {
            pos.insert(s, out.len());
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(state: StateId) -> SearchNode {
        SearchNode {
            state,
            ..Default::default()
        }
    }

    #[test]
    fn recycled_slot_is_reused() {
        let mut p = NodePool::new();
        let a = p.allocate(node(0));
        p.recycle(a);
        let b = p.allocate(node(1));
        assert_eq!(a, b);
        assert_eq!(p.slots_created(), 1);
        p.recycle(b);
        assert_eq!(p.live(), 0);
    }

    #[test]
    fn fresh_slots_without_recycling() {
        let mut p = NodePool::new();
        let hs: Vec<_> = (0..10).map(|i| p.allocate(node(i))).collect();
        let mut sorted = hs.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 10);
        assert_eq!(p.get(hs[7]).state, 7);
    }

    #[test]
    #[should_panic(expected = "double recycle")]
    fn double_recycle_panics() {
        let mut p = NodePool::new();
        let a = p.allocate(node(0));
        p.recycle(a);
        p.recycle(a);
    }

    #[test]
    fn blocks_grow_at_block_size() {
        let mut p = NodePool::new();
        for i in 0..=BLOCK_SIZE as u32 {
            p.allocate(node(i));
        }
        assert_eq!(p.blocks(), 2);
    }

    #[test]
    fn initial_entry_and_backtrack() {
        let mut a = ParentArrays::new(3);
        assert_eq!(a.record_expansion(0, NO_STATE, 0), 1);
        assert_eq!(a.record_expansion(1, 0, 1), 1);
        assert_eq!(a.record_expansion(2, 1, 1), 1);
        assert_eq!(a.backtrack(2, 1), vec![0, 1, 2]);
        assert_eq!(a.backtrack(0, 1), vec![0]);
    }

    #[test]
    fn loop_erasure() {
        assert_eq!(erase_loops(&[0, 1, 2, 1, 3]), vec![0, 1, 3]);
        assert_eq!(erase_loops(&[0, 1, 2]), vec![0, 1, 2]);
    }
}
