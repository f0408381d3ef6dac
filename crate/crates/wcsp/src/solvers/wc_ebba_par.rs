//! Budgeted bidirectional search with one worker per direction. The
//! workers share the global bounds and the stored path lists, and the solve
//! ends only when both have finished.

use std::sync::atomic::AtomicBool;

use crate::bounds::{budget_factors, init_parallel_bidirectional, InitOptions, ProblemInstance};
use crate::graph::{Attr, Direction, Graph};
use crate::schedule::run_pair;

use super::engine::{ChiLists, Limits, Shared, Side};
use super::live::LiveBounds;
use super::{conclude, drive, early_outcome, fresh_bounds, geo_for, SolveError, SolveMetrics, SolveOutcome, SolverOptions};

pub(super) fn run(g: &Graph, inst: &ProblemInstance, opts: &SolverOptions) -> Result<SolveOutcome, SolveError> {
    let mut geo_slot = None;
    let geo = geo_for(g, opts, &mut geo_slot);
    let gb = fresh_bounds(inst);
    let init = init_parallel_bidirectional(
        g,
        inst,
        &gb,
        InitOptions {
            geo,
            reversed_order: false,
        },
        opts.schedule,
    );
    let mut metrics = SolveMetrics {
        init_expansions: init.expansions,
        ..Default::default()
    };
    if let Some(out) = early_outcome(&init, &metrics) {
        return Ok(out);
    }
    let t = &init.tables;
    metrics.valid_states = t.valid_count() as u64;
    let h1 = |d| &t.table(d, Attr::Cost1).expect("both directions are initialised").h;
    let budget = budget_factors(&t.valid, h1(Direction::Forward), h1(Direction::Backward));
    let live = LiveBounds::from_tables(t, g.state_count());
    let chi = ChiLists::new(g.state_count());
    let limits = Limits::new(opts);
    let sh = Shared {
        g,
        inst: *inst,
        live: &live,
        gb: &gb,
        valid: &t.valid,
        bidirectional: true,
        htf: false,
        budget: Some(budget),
        chi: Some(&chi),
        store_refinement: opts.store_refinement,
        trace: opts.trace,
        limits: &limits,
    };
    let mut fwd = Side::new(&sh, Direction::Forward, Attr::Cost1, opts)?;
    let mut bwd = Side::new(&sh, Direction::Backward, Attr::Cost1, opts)?;
    let stop = AtomicBool::new(false);
    run_pair(
        opts.schedule,
        &stop,
        || drive(&mut fwd, &sh, &stop, false),
        || drive(&mut bwd, &sh, &stop, false),
    );
    conclude(g, opts, metrics, t, &gb, &live, vec![fwd, bwd], Some(budget), &limits)
}
