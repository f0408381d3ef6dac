//! Exact solvers for the weight constrained shortest path problem.
//!
//! Given a directed graph whose edges carry a cost and a weight, find the
//! path from `start` to `goal` with the smallest cost among those whose
//! total weight stays within a limit `W`. Ties on cost are broken towards
//! the smaller weight.
//!
//! Four A*-based solvers share one initialisation toolkit ([`bounds`]):
//!
//! * [`Algorithm::WcAStar`]: unidirectional, forward search only.
//! * [`Algorithm::WcBaStar`]: a forward and a backward search in opposite
//!   objective orders, running concurrently and tuning each other's bounds.
//! * [`Algorithm::WcEbba`]: bidirectional with a weight budget split between
//!   the two directions and partial path matching, single threaded.
//! * [`Algorithm::WcEbbaPar`]: the same search with one worker per direction.
//!
//! ```
//! use wcsp::{example_graph, solve, Algorithm, ProblemInstance, SolverOptions, Status};
//!
//! let g = example_graph();
//! let inst = ProblemInstance { start: 0, goal: 4, weight_limit: 6 };
//! let out = solve(Algorithm::WcAStar, &g, &inst, &SolverOptions::default()).unwrap();
//! assert_eq!(out.status, Status::Optimal);
//! assert_eq!(out.costs, Some((5, 5)));
//! assert_eq!(out.path.as_deref(), Some(&[0, 2, 4][..]));
//! ```

pub mod bounds;
pub mod cli;
pub mod graph;
pub mod nodepool;
pub mod oracle;
pub mod pqueue;
pub mod schedule;
pub mod solvers;

pub use bounds::ProblemInstance;
pub use graph::{example_graph, Attr, Cost, Direction, Graph, StateId, INF};
pub use pqueue::{QueueKind, TiePolicy};
pub use schedule::Schedule;
pub use solvers::{solve, Algorithm, SolveOutcome, SolverOptions, Status};
