//! Unidirectional constrained A* in (f1, f2) order.

use crate::bounds::{init_unidirectional, InitOptions, ProblemInstance};
use crate::graph::{Attr, Direction, Graph};

use super::engine::{Limits, Shared, Side, Tick};
use super::live::LiveBounds;
use super::{conclude, early_outcome, fresh_bounds, geo_for, SolveError, SolveMetrics, SolveOutcome, SolverOptions};

pub(super) fn run(g: &Graph, inst: &ProblemInstance, opts: &SolverOptions) -> Result<SolveOutcome, SolveError> {
    let mut geo_slot = None;
    let geo = geo_for(g, opts, &mut geo_slot);
    let gb = fresh_bounds(inst);
    let init = init_unidirectional(
        g,
        inst,
        &gb,
        InitOptions {
            geo,
            reversed_order: opts.reversed_init,
        },
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
        bidirectional: false,
        htf: false,
        budget: None,
        chi: None,
        store_refinement: false,
        trace: opts.trace,
        limits: &limits,
    };
    let mut side = Side::new(&sh, Direction::Forward, Attr::Cost1, opts)?;
    while let Tick::Continue = side.step(&sh) {
        if limits.is_hit() {
            break;
        }
    }
    conclude(g, opts, metrics, &init.tables, &gb, &live, vec![side], None, &limits)
}
