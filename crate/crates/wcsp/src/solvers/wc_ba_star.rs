//! Bidirectional constrained A*: a forward search in (f1, f2) order and a
//! backward search in (f2, f1) order run concurrently. The first expansion
//! of a state in either search tunes the other direction's bounds there.
//! The solve ends as soon as either search completes.

use std::sync::atomic::AtomicBool;

use crate::bounds::{init_parallel_bidirectional, InitOptions, ProblemInstance};
use crate::graph::{Attr, Direction, Graph};
use crate::schedule::run_pair;

use super::engine::{Limits, Shared, Side};
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
    metrics.valid_states = init.tables.valid_count() as u64;
    let live = LiveBounds::from_tables(&init.tables, g.state_count());
    let limits = Limits::new(opts);
    let sh = Shared {
        g,
        inst: *inst,
        live: &live,
        gb: &gb,
        valid: &init.tables.valid,
        bidirectional: true,
        htf: opts.htf,
        budget: None,
        chi: None,
        store_refinement: false,
        trace: opts.trace,
        limits: &limits,
    };
    let mut fwd = Side::new(&sh, Direction::Forward, Attr::Cost1, opts)?;
    let mut bwd = Side::new(&sh, Direction::Backward, Attr::Cost2, opts)?;
    let stop = AtomicBool::new(false);
    run_pair(
        opts.schedule,
        &stop,
        || drive(&mut fwd, &sh, &stop, true),
        || drive(&mut bwd, &sh, &stop, true),
    );
    conclude(g, opts, metrics, &init.tables, &gb, &live, vec![fwd, bwd], None, &limits)
}
