//! Kontsevich–Witten and generalised BGW correlators from Virasoro constraints.
//!
//! [`VirasoroSolver`] extracts correlators recursively; the operator-level
//! residuals in [`operators`] act on whole truncated free energies and serve as
//! the independent check of the solver.

pub mod operators;
mod solver;
mod table;

pub use operators::{
    apply_translated_oracle, apply_virasoro_oracle, check_homogeneity, kdv_residual, KdvReport,
    Model, VirasoroSpec,
};
pub use solver::VirasoroSolver;
pub use table::{multi_indices, CorrelatorTable, Engine};

use crate::exactcore::Truncation;

/// Kontsevich–Witten intersection numbers on the lattice of `trunc`.
pub fn kw_correlators(trunc: Truncation) -> CorrelatorTable {
    solve_table(Model::Kw, Engine::Kw, trunc)
}

/// Generalised BGW free-energy coefficients at s = 1; the s-power of `(g, k)` is `1 - g + |k|`.
pub fn bgw_correlators(trunc: Truncation) -> CorrelatorTable {
    solve_table(Model::Bgw, Engine::Bgw, trunc)
}

fn solve_table(model: Model, engine: Engine, trunc: Truncation) -> CorrelatorTable {
    let mut solver = VirasoroSolver::new(model);
    let mut table = CorrelatorTable::new(engine, trunc);
    for (g, k) in CorrelatorTable::lattice(engine, trunc) {
        let v = solver.correlator(g, &k);
        table.insert(g, &k, v);
    }
    table
}
