//! Classical maximizers on the same local models as the quantum algorithm,
//! so comparisons isolate the discrete search step.

use rand::Rng;

use crate::holder::{Grid, HolderFunction};
use crate::maximizer::{Eps1Policy, HolderMaxResult, LocalMaxima};
use crate::search::Sequence;
use crate::Result;

fn finish(local: &LocalMaxima<'_>, best: usize, classical: u64) -> Result<HolderMaxResult> {
    if let Some(e) = local.take_failure() {
        return Err(e);
    }
    let mut ledger = crate::QueryLedger::new();
    ledger.charge_classical(classical);
    ledger.charge_evaluations(local.evaluations());
    Ok(HolderMaxResult {
        value: local.get(best),
        witness: best,
        point: local.grid().center(best),
        n: local.grid().n(),
        eps1: Eps1Policy::GridPower.eps1(local.grid().n(), local.class()),
        success: true,
        cubes_touched: local.touched(),
        ledger,
    })
}

/// Deterministic scan of all `n^d` local maxima (`N` classical queries).
pub fn grid_maximize(f: &dyn HolderFunction, n: usize) -> Result<HolderMaxResult> {
    let class = f.class();
    let grid = Grid::new(n, class.d)?;
    let local = LocalMaxima::new(f, grid, Eps1Policy::GridPower.eps1(n, class));
    let mut best = 0;
    for i in 1..local.len() {
        if local.get(i) > local.get(best) {
            best = i;
        }
    }
    finish(&local, best, local.len() as u64)
}

/// Best local maximum over `budget` cubes of the `n`-grid drawn uniformly
/// with replacement (`budget` classical queries).
pub fn random_maximize<R: Rng + ?Sized>(
    f: &dyn HolderFunction,
    n: usize,
    budget: usize,
    rng: &mut R,
) -> Result<HolderMaxResult> {
    let class = f.class();
    if budget == 0 {
        return Err(crate::Error::InvalidParameter("budget must be >= 1".into()));
    }
    let grid = Grid::new(n, class.d)?;
    let local = LocalMaxima::new(f, grid, Eps1Policy::GridPower.eps1(n, class));
    let mut best = rng.gen_range(0..local.len());
    for _ in 1..budget {
        let i = rng.gen_range(0..local.len());
        if local.get(i) > local.get(best) {
            best = i;
        }
    }
    finish(&local, best, budget as u64)
}
