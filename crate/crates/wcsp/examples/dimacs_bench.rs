// Solve random pairs on the DIMACS New York graphs at several tightness
// levels with all four solvers.
//
// Point `WCSP_DIMACS_DIR` at a directory holding `USA-road-d.NY.gr` and
// `USA-road-t.NY.gr` (and optionally `USA-road-d.NY.co`). Without it the
// example prints a note and exits successfully.

use std::path::PathBuf;
use std::time::Duration;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wcsp::cli;
use wcsp::graph::load_dimacs;
use wcsp::{solve, Algorithm, SolverOptions, Status};

const PAIRS: usize = 10;
const PER_INSTANCE_LIMIT: Duration = Duration::from_secs(10);

pub fn run_example() -> anyhow::Result<()> {
    let Some(dir) = std::env::var_os("WCSP_DIMACS_DIR").map(PathBuf::from) else {
        println!("WCSP_DIMACS_DIR is not set; skipping the NY benchmark");
        return Ok(());
    };
    let co = dir.join("USA-road-d.NY.co");
    let g = load_dimacs(
        &dir.join("USA-road-d.NY.gr"),
        &dir.join("USA-road-t.NY.gr"),
        co.exists().then_some(co.as_path()),
    )?;
    println!("NY: {} states, {} edges", g.state_count(), g.edge_count());

    let n = g.state_count() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pairs: Vec<_> = (0..PAIRS).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    let deltas: Vec<_> = (1..=8).map(|k| Ratio::new(k, 10)).collect();
    let (instances, _) = cli::gen_instances(&g, &pairs, &deltas, false);

    let opts = SolverOptions { timeout: Some(PER_INSTANCE_LIMIT), ..SolverOptions::default() };
    let mut slowest = Duration::ZERO;
    for row in &instances.rows {
        let Some(inst) = cli::resolve(&g, row)? else { continue };
        let mut costs = None;
        for algo in Algorithm::ALL {
            let out = solve(algo, &g, &inst, &opts)?;
            anyhow::ensure!(out.status != Status::Timeout, "{algo} timed out on {inst:?}");
            anyhow::ensure!(*costs.get_or_insert(out.costs) == out.costs, "{algo} disagrees on {inst:?}");
            slowest = slowest.max(Duration::from_micros(out.metrics.runtime_us));
        }
        println!("{} -> {} W={} {:?}", inst.start + 1, inst.goal + 1, inst.weight_limit, costs.flatten());
    }
    println!("{} instances solved, slowest single solve {slowest:?}", instances.rows.len());
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
