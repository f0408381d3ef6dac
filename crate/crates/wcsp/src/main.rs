use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{ensure, Context, Result};
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wcsp::cli::{self, BenchPlan, GraphFlags, InstanceFile, InstanceRow, Limit, OracleCheck, RunFlags};
use wcsp::{solve, Algorithm, StateId};

#[derive(Parser)]
#[command(name = "wcsp", version, about = "Weight constrained shortest paths on DIMACS graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one start-goal query.
    Solve {
        #[command(flatten)]
        graph: GraphFlags,
        /// Start state (1-based).
        #[arg(long)]
        start: StateId,
        /// Goal state (1-based).
        #[arg(long)]
        goal: StateId,
        /// Weight limit W.
        #[arg(long, conflicts_with = "delta", required_unless_present = "delta")]
        weight: Option<u64>,
        /// Tightness in [0, 1], converted to W from the pair's cost2 bounds.
        #[arg(long)]
        delta: Option<String>,
        /// wc-astar, wc-bastar, wc-ebba or wc-ebba-par.
        #[arg(long, default_value = "wc-ebba")]
        algorithm: Algorithm,
        #[command(flatten)]
        run: RunFlags,
        /// Print the solution path.
        #[arg(long)]
        print_path: bool,
    },
    /// Write an instance file for the given pairs and tightness levels.
    GenInstances {
        #[command(flatten)]
        graph: GraphFlags,
        /// START:GOAL pair (1-based); repeatable.
        #[arg(long = "pair")]
        pairs: Vec<String>,
        /// Add this many seeded random pairs.
        #[arg(long, default_value_t = 0)]
        random_pairs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated tightness levels.
        #[arg(long, default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8")]
        deltas: String,
        /// Also emit each pair reversed.
        #[arg(long)]
        reversed: bool,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an instance file under several solvers and queues and write CSV.
    Bench {
        /// Graph files; defaults to the `graph` line of the instance file.
        #[command(flatten)]
        graph: GraphFlags,
        #[arg(long)]
        instances: PathBuf,
        /// Comma-separated algorithms.
        #[arg(long, default_value = "wc-astar,wc-bastar,wc-ebba,wc-ebba-par")]
        algorithms: String,
        /// Comma-separated QUEUE/TIE settings; defaults to the --queue/--tie flags.
        #[arg(long)]
        configs: Option<String>,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[command(flatten)]
        run: RunFlags,
        /// Output CSV (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare all solvers with the brute-force oracle on random graphs.
    OracleCheck {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        graphs: usize,
        #[arg(long, default_value_t = 30)]
        max_states: usize,
        #[arg(long, default_value_t = 10)]
        max_cost: u32,
    },
    /// Replace cost2 with uniform random integers and write both .gr files.
    Randomize {
        #[command(flatten)]
        graph: GraphFlags,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        lo: u32,
        #[arg(long, default_value_t = 10_000)]
        hi: u32,
        #[arg(long)]
        out_cost1: PathBuf,
        #[arg(long)]
        out_cost2: PathBuf,
    },
}

fn graph_from(flags: &GraphFlags) -> Result<wcsp::Graph> {
    cli::load_graph(&flags.files().context("--cost1 and --cost2 are required")?)
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn one_based(v: StateId, what: &str) -> Result<StateId> {
    ensure!(v >= 1, "--{what} is 1-based");
    Ok(v - 1)
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Solve {
            graph,
            start,
            goal,
            weight,
            delta,
            algorithm,
            run,
            print_path,
        } => {
            let opts = run.options()?;
            let g = graph_from(&graph)?;
            let limit = match (weight, delta) {
                (Some(w), _) => Limit::Weight(w),
                (None, Some(d)) => Limit::Tightness(cli::parse_delta(&d)?),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let row = InstanceRow {
                start: one_based(start, "start")?,
                goal: one_based(goal, "goal")?,
                limit,
            };
            let Some(inst) = cli::resolve(&g, &row)? else {
                println!("infeasible");
                return Ok(2);
            };
            let out = solve(algorithm, &g, &inst, &opts)?;
            match out.costs {
                Some((c1, c2)) => println!("{} {c1} {c2}", out.status),
                None => println!("{}", out.status),
            }
            if print_path {
                if let Some(p) = &out.path {
                    let ids: Vec<String> = p.iter().map(|s| (s + 1).to_string()).collect();
                    println!("path {}", ids.join(" "));
                }
            }
            let m = &out.metrics;
            println!("weight_limit {}", inst.weight_limit);
            println!("expansions {} generated {} init_expansions {}", m.expansions, m.generated, m.init_expansions);
            println!(
                "pruned dominance {} state_ub {} global_ub {}",
                m.pruned_dominance, m.pruned_state_ub, m.pruned_global_ub
            );
            println!("queue_ops {} peak_pool_blocks {} runtime_us {}", m.queue.queue_ops, m.peak_pool_blocks, m.runtime_us);
            Ok(cli::exit_code(out.status) as u8)
        }
        Command::GenInstances {
            graph,
            pairs,
            random_pairs,
            seed,
            deltas,
            reversed,
            out,
        } => {
            let g = graph_from(&graph)?;
            let mut list = pairs.iter().map(|p| cli::parse_pair(p)).collect::<Result<Vec<_>>>()?;
            let n = g.state_count() as StateId;
            ensure!(list.iter().all(|&(s, t)| s < n && t < n), "pair outside the graph");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..random_pairs {
                ensure!(n >= 2, "graph too small for random pairs");
                let s = rng.gen_range(0..n);
                list.push((s, (s + rng.gen_range(1..n)) % n));
            }
            let deltas = cli::parse_list(&deltas, cli::parse_delta)?;
            let (mut file, warnings) = cli::gen_instances(&g, &list, &deltas, reversed);
            for w in warnings {
                eprintln!("warning: {w}");
            }
            file.graph_files = graph.files().unwrap_or_default();
            file.write(output(&out)?)?;
            Ok(0)
        }
        Command::Bench {
            graph,
            instances,
            algorithms,
            configs,
            repeats,
            run,
            out,
        } => {
            let base = run.options()?;
            let file = InstanceFile::parse(BufReader::new(
                File::open(&instances).with_context(|| format!("opening {}", instances.display()))?,
            ))?;
            let g = match graph.files() {
                Some(files) => cli::load_graph(&files)?,
                None => {
                    let dir = instances.parent().unwrap_or(Path::new("."));
                    let files: Vec<PathBuf> = file.graph_files.iter().map(|f| dir.join(f)).collect();
                    cli::load_graph(&files).context("no --cost1/--cost2 and no usable graph line")?
                }
            };
            let configs = match configs {
                Some(c) => cli::parse_list(&c, cli::parse_config)?,
                None => vec![(base.queue, base.tie_policy)],
            };
            for &(q, t) in &configs {
                cli::validate_config(q, t)?;
            }
            let plan = BenchPlan {
                algorithms: cli::parse_list(&algorithms, |s| s.parse::<Algorithm>().map_err(anyhow::Error::msg))?,
                configs,
                repeats,
                base,
            };
            let rows = cli::bench(&g, &file, &plan);
            cli::write_rows(&rows, output(&out)?)?;
            Ok(0)
        }
        Command::OracleCheck {
            seed,
            graphs,
            max_states,
            max_cost,
        } => {
            let report = cli::oracle_check(OracleCheck {
                seed,
                graphs,
                max_states,
                max_cost,
            })?;
            print!("{report}");
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Randomize {
            graph,
            seed,
            lo,
            hi,
            out_cost1,
            out_cost2,
        } => {
            let g = graph_from(&graph)?;
            let r = cli::randomize(&g, seed, lo, hi, &out_cost1, &out_cost2)?;
            eprintln!("wrote {} arcs with cost2 in [{lo}, {hi}]", r.edge_count());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // Exit code 2 means "infeasible", so usage errors report 1 instead of clap's default.
    let args = match Cli::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(args.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
