// Solve the five-state example graph with every solver.
//
// Run with `cargo run --example quickstart`.

use wcsp::{example_graph, solve, Algorithm, ProblemInstance, SolverOptions, Status};

pub fn run_example() -> anyhow::Result<()> {
    let g = example_graph();
    println!("{} states, {} edges", g.state_count(), g.edge_count());

    for weight_limit in [2, 5, 6, 8] {
        let inst = ProblemInstance { start: 0, goal: 4, weight_limit };
        for algo in Algorithm::ALL {
            let out = solve(algo, &g, &inst, &SolverOptions::default())?;
            match (out.status, out.costs, &out.path) {
                (Status::Optimal, Some((c1, c2)), Some(path)) => {
                    println!("W={weight_limit:<2} {algo:<12} cost {c1} weight {c2} path {path:?}");
                }
                (status, ..) => println!("W={weight_limit:<2} {algo:<12} {status}"),
            }
        }
    }

    let out = solve(
        Algorithm::WcEbba,
        &g,
        &ProblemInstance { start: 0, goal: 4, weight_limit: 6 },
        &SolverOptions::default(),
    )?;
    anyhow::ensure!(out.costs == Some((5, 5)), "unexpected optimum {:?}", out.costs);
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
