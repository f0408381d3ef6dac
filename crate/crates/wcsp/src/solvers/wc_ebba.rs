//! Budgeted bidirectional search with partial path matching, interleaving
//! both directions on one thread by always taking the globally smallest
//! node.

use crate::bounds::{budget_factors, init_sequential_bidirectional, InitOptions, ProblemInstance};
use crate::graph::{Attr, Direction, Graph};

use super::engine::{ChiLists, Limits, Shared, Side, Tick};
use super::live::LiveBounds;
use super::{conclude, early_outcome, fresh_bounds, geo_for, SolveError, SolveMetrics, SolveOutcome, SolverOptions};

pub(super) fn run(g: &Graph, inst: &ProblemInstance, opts: &SolverOptions) -> Result<SolveOutcome, SolveError> {
    let mut geo_slot = None;
    let geo = geo_for(g, opts, &mut geo_slot);
    let gb = fresh_bounds(inst);
    let init = init_sequential_bidirectional(
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
    let no_ties = !opts.tie_policy.breaks_ties();
    while !limits.is_hit() {
        let take_forward = match (fwd.peek(), bwd.peek()) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) if no_ties => a.primary <= b.primary,
            (Some(a), Some(b)) => (a.primary, a.secondary) <= (b.primary, b.secondary),
        };
        let side = if take_forward { &mut fwd } else { &mut bwd };
        if let Tick::Finished = side.step(&sh) {
            break;
        }
    }
    conclude(g, opts, metrics, t, &gb, &live, vec![fwd, bwd], Some(budget), &limits)
}
