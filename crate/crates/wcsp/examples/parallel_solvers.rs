// The bidirectional solvers on a grid graph, with real
// threads and with the deterministic lockstep schedule.

use wcsp::cli::{pair_bounds, tightness_limit};
use wcsp::graph::grid_graph;
use wcsp::{solve, Algorithm, ProblemInstance, Schedule, SolverOptions};

use num_rational::Ratio;

pub fn run_example() -> anyhow::Result<()> {
    let g = grid_graph(40, 40, 50, 21);
    let (start, goal) = (39, 40 * 39);
    let Some((h2, ub2)) = pair_bounds(&g, start, goal) else {
        println!("goal unreachable");
        return Ok(());
    };
    let inst = ProblemInstance { start, goal, weight_limit: tightness_limit(h2, ub2, Ratio::new(1, 2)) };

    let mut seen = None;
    for schedule in [Schedule::RealThreads, Schedule::Lockstep(1), Schedule::Lockstep(64)] {
        let opts = SolverOptions { schedule, ..SolverOptions::default() };
        for algo in [Algorithm::WcBaStar, Algorithm::WcEbbaPar] {
            let out = solve(algo, &g, &inst, &opts)?;
            println!(
                "{algo:<12} {:<14} {:?} expansions {} in {} us",
                format!("{schedule:?}"),
                out.costs, out.metrics.expansions, out.metrics.runtime_us
            );
            anyhow::ensure!(seen.get_or_insert(out.costs) == &out.costs, "schedules disagree");
        }
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
