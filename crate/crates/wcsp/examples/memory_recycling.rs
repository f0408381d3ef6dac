// Node slots are recycled once a node is expanded, and solution paths are
// rebuilt from the per-state parent arrays rather than from the nodes.

use wcsp::graph::NO_STATE;
use wcsp::nodepool::{NodePool, ParentArrays, SearchNode};

pub fn run_example() -> anyhow::Result<()> {
    let mut pool = NodePool::new();
    let root = pool.allocate(SearchNode { state: 0, parent_state: NO_STATE, ..SearchNode::default() });
    let a = pool.allocate(SearchNode { state: 1, g: (2, 1), ..SearchNode::default() });
    pool.recycle(root);
    // The freed slot is handed out again before any new one is created.
    let b = pool.allocate(SearchNode { state: 2, g: (1, 3), ..SearchNode::default() });
    println!("slots created {} live {} peak {}", pool.slots_created(), pool.live(), pool.peak_live());
    anyhow::ensure!(b == root && pool.slots_created() == 2);
    pool.recycle(a);
    pool.recycle(b);

    // Expansions 0 -> 1 -> 3 and 0 -> 2 -> 3 give state 3 two entries.
    let mut parents = ParentArrays::new(4);
    let r = parents.record_expansion(0, NO_STATE, 0);
    let one = parents.record_expansion(1, 0, r);
    let two = parents.record_expansion(2, 0, r);
    let via_one = parents.record_expansion(3, 1, one);
    let via_two = parents.record_expansion(3, 2, two);
    println!("path index {via_one}: {:?}", parents.backtrack(3, via_one));
    println!("path index {via_two}: {:?}", parents.backtrack(3, via_two));
    anyhow::ensure!(parents.backtrack(3, via_two) == vec![0, 2, 3]);
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
