// Enumerate a Pareto frontier with the brute-force oracle and read the
// constrained optimum for each weight limit off it.

use wcsp::graph::grid_graph;
use wcsp::oracle::{constrained_optimum, enumerate_pareto};
use wcsp::{example_graph, solve, Algorithm, ProblemInstance, SolverOptions};

pub fn run_example() -> anyhow::Result<()> {
    let g = example_graph();
    let front = enumerate_pareto(&g, 0, 4)?;
    println!("example graph frontier:");
    for p in &front.points {
        println!("  ({}, {}) via {:?}", p.cost1, p.cost2, p.path);
    }

    // An 8x8 grid from corner to corner: each weight limit picks the
    // cheapest frontier point that fits, and the solver agrees with it.
    let g = grid_graph(8, 8, 20, 3);
    let front = enumerate_pareto(&g, 0, 63)?;
    println!("grid frontier has {} points: {:?}", front.len(), front.costs());
    let Some(lightest) = front.points.last() else {
        println!("no path");
        return Ok(());
    };
    for w in (lightest.cost2..=front.points[0].cost2).step_by(5) {
        let want = constrained_optimum(&g, 0, 63, w)?;
        let inst = ProblemInstance { start: 0, goal: 63, weight_limit: w };
        let got = solve(Algorithm::WcEbba, &g, &inst, &SolverOptions::default())?.costs;
        println!("  W={w:<4} oracle {want:?} solver {got:?}");
        anyhow::ensure!(got == want, "solver disagrees with the oracle at W={w}");
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
