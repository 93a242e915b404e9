//! WebAssembly bindings for the demo page in `www/`.

use rand::Rng;
use wasm_bindgen::prelude::*;

use qmax::holder::{make_function, ClassParams};
use qmax::maximizer::{quantum_maximize, MaximizerParams};
use qmax::qcore::MarkSet;
use qmax::rng::seeded;
use qmax::search::{find_extremum_traced, Extremum};
use qmax::{QueryLedger, SearchParams, StateVector};

/// Marked-index probability after `j = 0..=max_j` Grover iterates on `n`
/// indices of which the first `k` are marked, from the statevector.
#[wasm_bindgen]
pub fn grover_curve(n: usize, k: usize, max_j: u32) -> Result<Vec<f64>, String> {
    if k > n {
        return Err(format!("k = {k} exceeds n = {n}"));
    }
    let marks = MarkSet::from_indices(n, &(0..k).collect::<Vec<_>>());
    let mut state = StateVector::uniform(n).map_err(|e| e.to_string())?;
    let mut ledger = QueryLedger::new();
    let mut out = Vec::with_capacity(max_j as usize + 1);
    for _ in 0..=max_j {
        out.push(state.marked_mass(&marks));
        state
            .grover_iteration(&marks, &mut ledger)
            .map_err(|e| e.to_string())?;
    }
    Ok(out)
}

/// Values of a registered one-dimensional test function at `points` evenly
/// spaced abscissae in `[0, 1]`.
#[wasm_bindgen]
pub fn function_samples(name: &str, r: u32, rho: f64, points: usize) -> Result<Vec<f64>, String> {
    let class = ClassParams::new(1, r, rho).map_err(|e| e.to_string())?;
    let f = make_function(name, class).map_err(|e| e.to_string())?;
    let last = points.max(2) - 1;
    Ok((0..=last)
        .map(|i| f.value(&[i as f64 / last as f64]))
        .collect())
}

/// Outcome of one run of the quantum maximizer.
#[wasm_bindgen]
#[derive(Debug, Clone, Copy)]
pub struct MaxRun {
    pub value: f64,
    /// Center of the winning cube.
    pub point: f64,
    /// `NaN` when the function has no known maximum.
    pub known_max: f64,
    pub n: usize,
    pub quantum_queries: f64,
    pub classical_queries: f64,
    pub evaluations: f64,
    pub success: bool,
}

/// Maximizes a registered one-dimensional function on an `n`-cell grid.
#[wasm_bindgen]
pub fn maximize_1d(name: &str, r: u32, rho: f64, n: usize, seed: u32) -> Result<MaxRun, String> {
    let class = ClassParams::new(1, r, rho).map_err(|e| e.to_string())?;
    let f = make_function(name, class).map_err(|e| e.to_string())?;
    let mut rng = seeded(u64::from(seed));
    let res = quantum_maximize(f.as_ref(), &MaximizerParams::with_n(n), &mut rng)
        .map_err(|e| e.to_string())?;
    Ok(MaxRun {
        value: res.value,
        point: res.point[0],
        known_max: f.known_max().unwrap_or(f64::NAN),
        n: res.n,
        quantum_queries: res.ledger.quantum_queries as f64,
        classical_queries: res.ledger.classical_queries as f64,
        evaluations: res.ledger.evaluations as f64,
        success: res.success,
    })
}

/// The `n` uniform values searched by [`threshold_trace`] for `seed`.
#[wasm_bindgen]
pub fn random_sequence(n: usize, seed: u32) -> Vec<f64> {
    let mut rng = seeded(u64::from(seed));
    (0..n).map(|_| rng.gen()).collect()
}

/// Threshold indices visited by the maximum finder on
/// `random_sequence(n, seed)`, rounds separated by `-1`.
#[wasm_bindgen]
pub fn threshold_trace(n: usize, seed: u32, boost_rounds: u32) -> Result<Vec<i32>, String> {
    let values = random_sequence(n, seed);
    let params = SearchParams {
        boost_rounds,
        ..SearchParams::default()
    };
    let mut rng = seeded(u64::from(seed) ^ 0x5eed);
    let (_, trace) = find_extremum_traced(&values, Extremum::Maximum, &mut rng, &params)
        .map_err(|e| e.to_string())?;
    Ok(trace
        .iter()
        .enumerate()
        .flat_map(|(i, round)| {
            let sep = (i > 0).then_some(-1);
            sep.into_iter().chain(round.iter().map(|&t| t as i32))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grover_curve_matches_the_closed_form() {
        let curve = grover_curve(16, 1, 10).unwrap();
        let theta = (1.0f64 / 16.0).sqrt().asin();
        for (j, p) in curve.iter().enumerate() {
            let want = ((2 * j + 1) as f64 * theta).sin().powi(2);
            assert!((p - want).abs() < 1e-12);
        }
        assert!(grover_curve(4, 5, 3).is_err());
    }

    #[test]
    fn maximizer_run_on_powercusp() {
        let run = maximize_1d("powercusp", 1, 1.0, 16, 3).unwrap();
        assert_eq!(run.known_max, 0.5);
        // Error bound (H + 1) n^-(r+rho) with H = 1.
        assert!((run.value - 0.5).abs() <= 2.0 / 256.0, "{}", run.value);
        assert!(maximize_1d("nope", 1, 1.0, 16, 3).is_err());
        assert_eq!(function_samples("sin1d", 1, 1.0, 5).unwrap().len(), 5);
    }

    #[test]
    fn trace_rounds_are_increasing_chains() {
        let values = random_sequence(64, 9);
        let trace = threshold_trace(64, 9, 2).unwrap();
        assert_eq!(trace.iter().filter(|&&t| t == -1).count(), 1);
        for round in trace.split(|&t| t == -1) {
            assert!(round
                .windows(2)
                .all(|w| values[w[1] as usize] > values[w[0] as usize]));
        }
    }
}
