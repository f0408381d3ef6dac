// Run one instance under every queue and tie policy and compare the
// operation counts. The optimum never depends on the queue.

use wcsp::cli::{pair_bounds, queue_name, tie_name, tightness_limit, ALL_CONFIGS};
use wcsp::graph::grid_graph;
use wcsp::{solve, Algorithm, ProblemInstance, SolverOptions};

use num_rational::Ratio;

pub fn run_example() -> anyhow::Result<()> {
    let g = grid_graph(40, 40, 100, 5);
    let (start, goal) = (0, 40 * 40 - 1);
    let Some((h2, ub2)) = pair_bounds(&g, start, goal) else {
        println!("goal unreachable");
        return Ok(());
    };
    let inst = ProblemInstance { start, goal, weight_limit: tightness_limit(h2, ub2, Ratio::new(3, 10)) };
    println!("W = {} (cost2 bounds {h2}..{ub2})", inst.weight_limit);
    println!("{:<8} {:<10} {:>10} {:>12}  optimum", "queue", "tie", "expanded", "queue_ops");

    let mut costs = Vec::new();
    for (queue, tie) in ALL_CONFIGS {
        let opts = SolverOptions { delta_f: 4, ..SolverOptions::default().with_queue(queue, tie) };
        let out = solve(Algorithm::WcEbba, &g, &inst, &opts)?;
        println!(
            "{:<8} {:<10} {:>10} {:>12}  {:?}",
            queue_name(queue),
            tie_name(tie),
            out.metrics.expansions,
            out.metrics.queue.queue_ops,
            out.costs
        );
        costs.push(out.costs);
    }
    anyhow::ensure!(costs.windows(2).all(|w| w[0] == w[1]), "queues disagree");
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
