//! Sampling checks for class membership and the Taylor remainder rate.

use rand::Rng;

use super::{multi_indices_of_order, taylor_model, Grid, HolderFunction};
use crate::qcore::QueryLedger;
use crate::Result;

/// Worst observed `|f(t) - w^i(t)| / (1/n)^(r+rho)` over `samples` random
/// points, each in a random cube `K^i` with its Taylor model `w^i`.
pub fn remainder_bound_check<R: Rng + ?Sized>(
    f: &dyn HolderFunction,
    grid: &Grid,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    let class = f.class();
    let scale = grid.edge().powf(class.smoothness());
    let mut scratch = QueryLedger::new();
    let mut worst = 0.0_f64;
    for _ in 0..samples {
        let i = rng.gen_range(0..grid.len());
        let model = taylor_model(f, &grid.center(i), &mut scratch)?;
        let (lo, hi) = grid.bounds(i);
        let t: Vec<f64> = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| rng.gen_range(*a..=*b))
            .collect();
        worst = worst.max((f.value(&t) - model.eval(&t)).abs() / scale);
    }
    Ok(worst)
}

/// Largest sampled Hölder quotient and sup of `|f|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub holder_quotient: f64,
    pub sup_abs: f64,
}

/// [`membership_check_in`] over the whole unit cube.
pub fn membership_check<R: Rng + ?Sized>(
    f: &dyn HolderFunction,
    pairs: usize,
    rng: &mut R,
) -> Membership {
    let d = f.class().d;
    membership_check_in(f, &vec![0.0; d], &vec![1.0; d], pairs, rng)
}

/// Samples `pairs` point pairs in the box `[lo, hi]` and returns the largest
/// `|D^a f(x) - D^a f(y)| / |x - y|_inf^rho` over all `|a| = r`.
///
/// Half the pairs are independent uniform draws; the other half are local
/// perturbations at log-uniform scales, where Hölder quotients peak.
pub fn membership_check_in<R: Rng + ?Sized>(
    f: &dyn HolderFunction,
    lo: &[f64],
    hi: &[f64],
    pairs: usize,
    rng: &mut R,
) -> Membership {
    let class = f.class();
    let alphas = multi_indices_of_order(class.d, class.r);
    let mut quotient = 0.0_f64;
    let mut sup = 0.0_f64;
    for p in 0..pairs {
        let x: Vec<f64> = lo
            .iter()
            .zip(hi)
            .map(|(a, b)| rng.gen_range(*a..=*b))
            .collect();
        let y: Vec<f64> = if p % 2 == 0 {
            lo.iter()
                .zip(hi)
                .map(|(a, b)| rng.gen_range(*a..=*b))
                .collect()
        } else {
            let scale = 10f64.powf(-rng.gen_range(0.0..4.0));
            x.iter()
                .zip(lo.iter().zip(hi))
                .map(|(&v, (a, b))| (v + (b - a) * scale * rng.gen_range(-1.0..=1.0)).clamp(*a, *b))
                .collect()
        };
        sup = sup.max(f.value(&x).abs()).max(f.value(&y).abs());
        let dist = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if dist == 0.0 {
            continue;
        }
        let denom = dist.powf(class.rho);
        for a in &alphas {
            quotient = quotient.max((f.partial(a, &x) - f.partial(a, &y)).abs() / denom);
        }
    }
    Membership {
        holder_quotient: quotient,
        sup_abs: sup,
    }
}
