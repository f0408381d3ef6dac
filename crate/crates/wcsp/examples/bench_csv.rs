// Write a graph as a DIMACS file pair, generate tightness instances for it
// and benchmark them into CSV.

use std::fs::File;
use std::io::BufWriter;

use num_rational::Ratio;
use wcsp::cli::{self, BenchPlan, ALL_CONFIGS};
use wcsp::graph::{load_dimacs, random_graph, write_gr};
use wcsp::{Algorithm, Attr, SolverOptions};

pub fn run_example() -> anyhow::Result<()> {
    let dir = std::env::temp_dir().join(format!("wcsp-bench-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let (d, t) = (dir.join("demo-d.gr"), dir.join("demo-t.gr"));
    let g = random_graph(500, 2_500, 30, 3);
    write_gr(&g, Attr::Cost1, BufWriter::new(File::create(&d)?))?;
    write_gr(&g, Attr::Cost2, BufWriter::new(File::create(&t)?))?;
    let g = load_dimacs(&d, &t, None)?;

    let deltas = [Ratio::new(1, 10), Ratio::new(5, 10), Ratio::new(9, 10)];
    let (instances, warnings) = cli::gen_instances(&g, &[(0, 499), (17, 250)], &deltas, true);
    for w in &warnings {
        println!("warning: {w}");
    }
    let mut text = Vec::new();
    instances.write(&mut text)?;
    print!("{}", String::from_utf8(text)?);

    let plan = BenchPlan {
        algorithms: Algorithm::ALL.to_vec(),
        configs: ALL_CONFIGS[..2].to_vec(),
        repeats: 3,
        base: SolverOptions::default(),
    };
    let rows = cli::bench(&g, &instances, &plan);
    let mut csv = Vec::new();
    cli::write_rows(&rows, &mut csv)?;
    let csv = String::from_utf8(csv)?;
    for line in csv.lines().take(6) {
        println!("{line}");
    }
    println!("... {} rows", rows.len());
    anyhow::ensure!(cli::read_rows(csv.as_bytes())? == rows, "CSV does not round-trip");
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
