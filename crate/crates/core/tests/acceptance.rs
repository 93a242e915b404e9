//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;

use qmax::bench::{
    binomial_sigma, run_experiment, to_csv_string, CsvRow, ExperimentKind, ExperimentSpec,
};
use qmax::holder::{
    multi_indices_up_to, taylor_coefficient_count, taylor_model, BumpFamily, ClassParams,
    HolderFunction, MultiIndex, PowerCusp, TaylorModel,
};
use qmax::maximizer::local_max_taylor;
use qmax::qcore::{grover_success_probability, MarkSet};
use qmax::reduction::{embed_bits, max_eps1};
use qmax::rng::seeded;
use qmax::{QueryLedger, StateVector};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn summary(rows: &[CsvRow]) -> &CsvRow {
    rows.iter()
        .find(|r| r.is_summary())
        .expect("experiment emits a summary row")
}

fn grover_closed_form() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(101);
    let mut worst = 0.0_f64;
    for n in 2..=64usize {
        for k in 0..=n {
            let mut idx: Vec<usize> = (0..n).collect();
            for i in 0..k {
                let j = rng.gen_range(i..n);
                idx.swap(i, j);
            }
            let marks = MarkSet::from_indices(n, &idx[..k]);
            let mut state = StateVector::uniform(n).unwrap();
            let mut ledger = QueryLedger::new();
            for j in 0..=20u64 {
                let expected = grover_success_probability(n, k, j).unwrap();
                worst = worst.max((state.marked_mass(&marks) - expected).abs());
                state.grover_iteration(&marks, &mut ledger).unwrap();
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && elapsed < Duration::from_secs(10),
        format!(
            "max deviation {worst:.2e} (tol 1e-10), {:.2}s (limit 10s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn maximum_success() -> Outcome {
    let start = Instant::now();
    let trials = 2000;
    let mut pass = true;
    let mut parts = Vec::new();
    for (boost, target) in [(1u32, 0.5), (2, 0.75)] {
        let mut spec = ExperimentSpec::new(ExperimentKind::MaxfindSuccess);
        spec.n_values = vec![16, 64, 256, 1024];
        spec.trials = trials;
        spec.master_seed = 200 + u64::from(boost);
        spec.search.boost_rounds = boost;
        let floor = target - 3.0 * binomial_sigma(target, trials);
        let rows = run_experiment(&spec).unwrap();
        for row in rows.iter().filter(|r| !r.is_summary()) {
            let rate = row.success_rate.unwrap();
            pass &= rate >= floor;
            parts.push(format!("b{boost} n={} {rate:.3}", row.n.unwrap()));
        }
        parts.push(format!("(floor b{boost} {floor:.3})"));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(300);
    parts.push(format!("{:.1}s", elapsed.as_secs_f64()));
    outcome(pass, parts.join(", "))
}

fn query_scaling() -> Outcome {
    let mut spec = ExperimentSpec::new(ExperimentKind::MaxfindSuccess);
    spec.n_values = (4..=12).map(|k| 1usize << k).collect();
    spec.trials = 200;
    spec.master_seed = 300;
    let rows = run_experiment(&spec).unwrap();
    let slope = summary(&rows).slope.unwrap();
    outcome(
        (0.45..=0.55).contains(&slope),
        format!("slope {slope:.4} over n=2^4..2^12 (want [0.45, 0.55])"),
    )
}

fn error_rate() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (r, rho) in [(0, 1.0), (1, 0.5), (1, 1.0), (2, 1.0)] {
        for d in [1, 2] {
            let mut spec = ExperimentSpec::new(ExperimentKind::HolderErrorVsN);
            spec.function = "powercusp".into();
            spec.class = ClassParams::new(d, r, rho).unwrap();
            spec.n_values = vec![4, 8, 16, 32, 64];
            spec.trials = 200;
            spec.master_seed = 400;
            let rows = run_experiment(&spec).unwrap();
            let got = rows.iter().find(|r| r.is_summary()).and_then(|r| r.slope);
            let want = -(f64::from(r) + rho);
            let ok = got.is_some_and(|s| (s - want).abs() <= 0.15);
            pass &= ok;
            parts.push(match got {
                Some(s) => format!("(d={d},r={r},rho={rho}) {s:.3} vs {want}"),
                None => format!("(d={d},r={r},rho={rho}) no fit"),
            });
        }
    }
    outcome(pass, parts.join(", "))
}

fn query_exponents() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (d, r, rho) in [(1, 0, 1.0), (1, 1, 1.0), (2, 0, 1.0), (2, 1, 0.5)] {
        let class = ClassParams::new(d, r, rho).unwrap();
        let mut spec = ExperimentSpec::new(ExperimentKind::HolderQueriesVsEps);
        spec.function = "cosprod".into();
        spec.class = class;
        spec.trials = 5;
        spec.master_seed = 500;
        let quantum = summary(&run_experiment(&spec).unwrap()).slope.unwrap();
        spec.kind = ExperimentKind::BaselineQueriesVsEps;
        let classical = summary(&run_experiment(&spec).unwrap()).slope.unwrap();
        let p = class.smoothness();
        let wq = -(d as f64) / (2.0 * p);
        let wc = -(d as f64) / p;
        let ratio = classical / quantum;
        let ok = (quantum - wq).abs() <= 0.1 * wq.abs()
            && (classical - wc).abs() <= 0.1 * wc.abs()
            && (1.8..=2.2).contains(&ratio);
        pass &= ok;
        parts.push(format!(
            "(d={d},r={r},rho={rho}) q {quantum:.3}/{wq:.3} c {classical:.3}/{wc:.3} ratio {ratio:.3}"
        ));
    }
    outcome(pass, parts.join(", "))
}

/// Counts exponent vectors in `{0..=r}^d` with sum at most `r` by odometer.
fn brute_force_count(d: usize, r: u32) -> u64 {
    let mut e = vec![0u32; d];
    let mut count = 0;
    loop {
        if e.iter().sum::<u32>() <= r {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == d {
                return count;
            }
            e[i] += 1;
            if e[i] <= r {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

fn coefficient_counts() -> Outcome {
    let mut mismatches = Vec::new();
    for d in 1..=6 {
        for r in 0..=6u32 {
            let brute = brute_force_count(d, r);
            let formula = taylor_coefficient_count(d, r);
            let listed = multi_indices_up_to(d, r).len() as u64;
            let class = ClassParams::new(d, r, 1.0).unwrap();
            let f = PowerCusp::new(class).unwrap();
            let mut ledger = QueryLedger::new();
            taylor_model(&f, &vec![0.5; d], &mut ledger).unwrap();
            let charged = ledger.evaluations;
            if [formula, listed, class.coefficient_count(), charged] != [brute; 4] {
                mismatches.push(format!("d={d} r={r}"));
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            "49 (d, r) pairs match enumeration exactly".into()
        } else {
            format!("mismatches at {}", mismatches.join(" "))
        },
    )
}

fn or_reduction() -> Outcome {
    let trials = 1000;
    let mut spec = ExperimentSpec::new(ExperimentKind::OrReduction);
    spec.class = ClassParams::new(1, 1, 1.0).unwrap();
    spec.n_values = vec![64];
    spec.trials = trials;
    spec.master_seed = 700;
    let floor = 0.75 - 3.0 * binomial_sigma(0.75, trials);
    let rows = run_experiment(&spec).unwrap();
    let mut pass = rows.len() == 3;
    let mut parts = Vec::new();
    for row in &rows {
        let rate = row.success_rate.unwrap();
        pass &= rate >= floor;
        parts.push(format!("{} {rate:.3}", row.function));
    }
    parts.push(format!("floor {floor:.3}"));
    outcome(pass, parts.join(", "))
}

/// Explicit `(2|u><u| - I) O` applied by dense matrix-vector product.
fn dense_grover(state: &[Complex64], marks: &[bool]) -> Vec<Complex64> {
    let n = state.len();
    let oracle: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i != j {
                        0.0
                    } else if marks[i] {
                        -1.0
                    } else {
                        1.0
                    }
                })
                .collect()
        })
        .collect();
    let diffusion: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| 2.0 / n as f64 - if i == j { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    let apply = |m: &Vec<Vec<f64>>, v: &[Complex64]| -> Vec<Complex64> {
        m.iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| b * *a).sum())
            .collect()
    };
    apply(&diffusion, &apply(&oracle, state))
}

fn grover_vs_matrices() -> (bool, String) {
    let mut rng = seeded(801);
    let mut worst = 0.0_f64;
    for n in 1..=16usize {
        for _ in 0..20 {
            let marks: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.4)).collect();
            let raw: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            let amps: Vec<Complex64> = raw.iter().map(|a| a / norm).collect();
            let mut state = StateVector::from_amplitudes(amps.clone()).unwrap();
            let pred = MarkSet::from_mask(marks.clone());
            let mut reference = amps;
            let mut ledger = QueryLedger::new();
            for _ in 0..5 {
                state.grover_iteration(&pred, &mut ledger).unwrap();
                reference = dense_grover(&reference, &marks);
                for (a, b) in state.amplitudes().iter().zip(&reference) {
                    worst = worst.max((a - b).norm());
                }
            }
        }
    }
    (worst <= 1e-12, format!("grover {worst:.1e}"))
}

fn local_max_vs_dense() -> (bool, String) {
    let mut rng = seeded(802);
    let eps1 = 1e-3;
    let h = 0.125f64;
    let mut worst = 0.0_f64;
    for model_index in 0..100 {
        let (d, r, side) = if model_index % 2 == 0 {
            (1, 4, 200_001)
        } else {
            (2, 3, 1001)
        };
        let terms: Vec<(MultiIndex, f64)> = multi_indices_up_to(d, r)
            .into_iter()
            .map(|a| {
                let scale = h.powi(-(a.order() as i32)) * 0.2;
                (a, rng.gen_range(-1.0..1.0) * scale)
            })
            .collect();
        let center: Vec<f64> = (0..d)
            .map(|_| h * (rng.gen_range(0..8) as f64 + 0.5))
            .collect();
        let model = TaylorModel::from_terms(center.clone(), terms).unwrap();
        let lo: Vec<f64> = center.iter().map(|c| c - h / 2.0).collect();
        let hi: Vec<f64> = center.iter().map(|c| c + h / 2.0).collect();
        let got = local_max_taylor(&model, &lo, &hi, eps1);
        let step = h / (side - 1) as f64;
        let coord = |i: usize| -h / 2.0 + step * i as f64;
        let dense = if d == 1 {
            (0..side)
                .map(|i| model.eval_offset(&[coord(i)]))
                .fold(f64::NEG_INFINITY, f64::max)
        } else {
            let mut best = f64::NEG_INFINITY;
            for i in 0..side {
                for j in 0..side {
                    best = best.max(model.eval_offset(&[coord(i), coord(j)]));
                }
            }
            best
        };
        worst = worst.max((got - dense).abs());
    }
    (
        worst <= eps1,
        format!("local max {worst:.1e} (eps1 {eps1:.0e})"),
    )
}

fn embedding_vs_sum() -> (bool, String) {
    let mut rng = seeded(803);
    let mut worst = 0.0_f64;
    for (d, n) in [(1, 64), (2, 49)] {
        let class = ClassParams::new(d, 1, 1.0).unwrap();
        let family = BumpFamily::new(n, class, max_eps1(n, class)).unwrap();
        let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let f = embed_bits(&bits, family.clone()).unwrap();
        for _ in 0..5000 {
            let t: Vec<f64> = (0..d).map(|_| rng.gen()).collect();
            let sum: f64 = (0..n)
                .filter(|&i| bits[i])
                .map(|i| family.member(i).value(&t))
                .sum();
            worst = worst.max((f.value(&t) - sum).abs());
        }
    }
    (
        worst <= 1e-12,
        format!("embedding {worst:.1e} over 10^4 points"),
    )
}

fn oracle_equivalences() -> Outcome {
    let checks = [
        grover_vs_matrices(),
        local_max_vs_dense(),
        embedding_vs_sum(),
    ];
    outcome(
        checks.iter().all(|c| c.0),
        checks
            .iter()
            .map(|c| c.1.as_str())
            .collect::<Vec<_>>()
            .join(", "),
    )
}

fn reproducibility() -> Outcome {
    let mut identical = true;
    for kind in ExperimentKind::ALL {
        let mut spec = ExperimentSpec::new(kind);
        spec.trials = spec.trials.min(20);
        spec.n_values.truncate(3);
        spec.master_seed = 900;
        let a = to_csv_string(&run_experiment(&spec).unwrap());
        let b = to_csv_string(&run_experiment(&spec).unwrap());
        identical &= a == b;
    }
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("run{run}.csv"));
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_qmax"))
            .args([
                "maxfind-bench",
                "--seed",
                "42",
                "--trials",
                "50",
                "--n",
                "16,64,256",
                "--out",
            ])
            .arg(&path)
            .status()
            .unwrap();
        identical &= status.success();
        outputs.push(std::fs::read(&path).unwrap_or_default());
    }
    identical &= !outputs[0].is_empty() && outputs[0] == outputs[1];
    outcome(
        identical,
        "six experiments in-process and the CLI, each run twice under one seed".into(),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 grover closed form", grover_closed_form),
        ("2 maximum-finding success", maximum_success),
        ("3 query scaling sqrt(n)", query_scaling),
        ("4 error rate vs n", error_rate),
        ("5 query exponents vs eps", query_exponents),
        ("6 coefficient counts", coefficient_counts),
        ("7 OR reduction", or_reduction),
        ("8 oracle equivalences", oracle_equivalences),
        ("9 reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {name}: {status} [{:.1}s] {}",
            start.elapsed().as_secs_f64(),
            result.detail
        );
        failed += usize::from(!result.pass);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
