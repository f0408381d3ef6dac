// Record the events of a search: pops, prunes, expansions and the
// incumbents found along the way.

use wcsp::solvers::TraceEvent;
use wcsp::{example_graph, solve, Algorithm, Direction, ProblemInstance, SolverOptions};

pub fn run_example() -> anyhow::Result<()> {
    let g = example_graph();
    let inst = ProblemInstance { start: 0, goal: 4, weight_limit: 5 };
    let opts = SolverOptions { trace: true, ..SolverOptions::default() };
    let out = solve(Algorithm::WcAStar, &g, &inst, &opts)?;
    println!("{} {:?} path {:?}", out.status, out.costs, out.path);

    let Some(trace) = out.trace else {
        println!("settled during initialisation, nothing to trace");
        return Ok(());
    };
    for e in &trace.events[Direction::Forward.index()] {
        match e {
            TraceEvent::Pop { state, f, g } => println!("  pop   s{} f={f:?} g={g:?}", state + 1),
            TraceEvent::Expanded { state, .. } => println!("  exp   s{}", state + 1),
            TraceEvent::Pruned { state, reason, .. } => println!("  prune s{} ({reason:?})", state + 1),
            other => println!("  {other:?}"),
        }
    }
    println!("incumbents: {:?}", trace.incumbents);
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
