//! Seeded experiment batches producing CSV rows.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::csv::CsvRow;
use super::stats::{estimate_error_quantile, fit_loglog_slope, LogLogFit};
use crate::baselines::grid_maximize;
use crate::holder::{make_function, ClassParams, HolderFunction};
use crate::maximizer::{error_bound, quantum_maximize, MaximizerParams};
use crate::qcore::FnPredicate;
use crate::reduction::{max_eps1, or_via_maximizer, ReductionParams};
use crate::rng::{trial_rng, SimRng};
use crate::search::{find_maximum, qsearch, SearchParams};
use crate::{Error, QueryLedger, Result};

/// Quantile level reported in the `error_quantile_theta25` column.
pub const THETA: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    QsearchScaling,
    MaxfindSuccess,
    HolderErrorVsN,
    HolderQueriesVsEps,
    BaselineQueriesVsEps,
    OrReduction,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::QsearchScaling,
        ExperimentKind::MaxfindSuccess,
        ExperimentKind::HolderErrorVsN,
        ExperimentKind::HolderQueriesVsEps,
        ExperimentKind::BaselineQueriesVsEps,
        ExperimentKind::OrReduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::QsearchScaling => "qsearch-scaling",
            ExperimentKind::MaxfindSuccess => "maxfind-success",
            ExperimentKind::HolderErrorVsN => "holder-error-vs-n",
            ExperimentKind::HolderQueriesVsEps => "holder-queries-vs-eps",
            ExperimentKind::BaselineQueriesVsEps => "baseline-queries-vs-eps",
            ExperimentKind::OrReduction => "or-reduction",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownExperiment(s.to_string()))
    }
}

/// Everything needed to reproduce one batch.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    /// Registered test function; ignored by the discrete experiments.
    pub function: String,
    pub class: ClassParams,
    /// Sequence lengths, grid subdivisions or bit counts, depending on `kind`.
    pub n_values: Vec<usize>,
    pub eps_values: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    pub search: SearchParams,
}

impl ExperimentSpec {
    /// Defaults for `kind`; callers override fields as needed.
    pub fn new(kind: ExperimentKind) -> Self {
        let unit = |d, r, rho| ClassParams { d, r, rho };
        let (function, class, n_values, trials) = match kind {
            ExperimentKind::QsearchScaling => ("", unit(1, 0, 1.0), pow2(4..=12), 200),
            ExperimentKind::MaxfindSuccess => ("", unit(1, 0, 1.0), pow2(4..=10), 500),
            ExperimentKind::HolderErrorVsN => ("powercusp", unit(1, 1, 1.0), pow2(2..=6), 200),
            ExperimentKind::HolderQueriesVsEps | ExperimentKind::BaselineQueriesVsEps => {
                ("cosprod", unit(1, 0, 1.0), Vec::new(), 10)
            }
            ExperimentKind::OrReduction => ("bumpfamily", unit(1, 1, 1.0), vec![64], 1000),
        };
        Self {
            kind,
            function: function.to_string(),
            class,
            n_values,
            eps_values: Vec::new(),
            trials,
            master_seed: 0,
            search: SearchParams::default(),
        }
    }

    /// Accuracy targets used when `eps_values` is empty: the error bounds of
    /// the grids `n = 4, 8, ..., 64`, so that consecutive targets double `n`.
    pub fn eps_sweep(&self) -> Vec<f64> {
        if !self.eps_values.is_empty() {
            return self.eps_values.clone();
        }
        let h = self.class.default_h_conf();
        pow2(2..=6)
            .into_iter()
            .map(|n| error_bound(self.class, n, h))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.class.validate()?;
        self.search.validate()?;
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        let needs_n = !matches!(
            self.kind,
            ExperimentKind::HolderQueriesVsEps | ExperimentKind::BaselineQueriesVsEps
        );
        if needs_n && self.n_values.is_empty() {
            return Err(Error::InvalidParameter("at least one n is required".into()));
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidParameter(format!("n must be >= 1, got {n}")));
        }
        if let Some(&e) = self
            .eps_values
            .iter()
            .find(|&&e| !(e > 0.0 && e.is_finite()))
        {
            return Err(Error::InvalidParameter(format!(
                "eps must be positive, got {e}"
            )));
        }
        Ok(())
    }
}

fn pow2(exps: std::ops::RangeInclusive<u32>) -> Vec<usize> {
    exps.map(|k| 1usize << k).collect()
}

/// Stream of trial `t` at sweep point `point`.
fn rng_for(spec: &ExperimentSpec, point: usize, t: usize) -> SimRng {
    trial_rng(spec.master_seed, ((point as u64) << 32) | t as u64)
}

/// Per-point aggregates.
#[derive(Default)]
struct Tally {
    trials: usize,
    successes: usize,
    ledger: QueryLedger,
    errors: Vec<f64>,
}

impl Tally {
    fn push(&mut self, success: bool, ledger: QueryLedger, error: Option<f64>) {
        self.trials += 1;
        self.successes += usize::from(success);
        self.ledger += ledger;
        if let Some(e) = error {
            self.errors.push(e);
        }
    }

    fn mean(&self, total: u64) -> f64 {
        total as f64 / self.trials as f64
    }

    fn fill(&self, row: &mut CsvRow) -> Result<()> {
        row.trials = Some(self.trials);
        row.success_rate = Some(self.successes as f64 / self.trials as f64);
        row.mean_quantum_queries = Some(self.mean(self.ledger.quantum_queries));
        row.mean_classical_queries = Some(self.mean(self.ledger.classical_queries));
        row.mean_evaluations = Some(self.mean(self.ledger.evaluations));
        if !self.errors.is_empty() {
            row.error_quantile = Some(estimate_error_quantile(&self.errors, THETA)?.epsilon_hat);
        }
        Ok(())
    }
}

fn base_row(spec: &ExperimentSpec, function: &str, with_class: bool) -> CsvRow {
    CsvRow {
        experiment: spec.kind.name().to_string(),
        function: function.to_string(),
        d: with_class.then_some(spec.class.d),
        r: with_class.then_some(spec.class.r),
        rho: with_class.then_some(spec.class.rho),
        master_seed: Some(spec.master_seed),
        ..Default::default()
    }
}

/// Appends a summary row fitting `y(row)` against `x(row)` when at least three
/// rows carry positive coordinates; otherwise nothing is appended.
fn summarize(
    rows: &mut Vec<CsvRow>,
    template: CsvRow,
    x: impl Fn(&CsvRow) -> Option<f64>,
    y: impl Fn(&CsvRow) -> Option<f64>,
) {
    let pts: Option<Vec<(f64, f64)>> = rows.iter().map(|r| Some((x(r)?, y(r)?))).collect();
    let Some(pts) = pts else { return };
    let Ok(LogLogFit {
        slope,
        intercept,
        r2,
    }) = fit_loglog_slope(&pts)
    else {
        return;
    };
    rows.push(CsvRow {
        trials: rows.first().and_then(|r| r.trials),
        slope: Some(slope),
        intercept: Some(intercept),
        r2: Some(r2),
        ..template
    });
}

fn as_f64(v: Option<usize>) -> Option<f64> {
    v.map(|v| v as f64)
}

/// Runs `spec` and returns its rows, ordered by sweep point, with summary rows
/// last.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<CsvRow>> {
    spec.validate()?;
    match spec.kind {
        ExperimentKind::QsearchScaling => qsearch_scaling(spec),
        ExperimentKind::MaxfindSuccess => maxfind_success(spec),
        ExperimentKind::HolderErrorVsN => holder_error_vs_n(spec),
        ExperimentKind::HolderQueriesVsEps => holder_queries_vs_eps(spec),
        ExperimentKind::BaselineQueriesVsEps => baseline_queries_vs_eps(spec),
        ExperimentKind::OrReduction => or_reduction(spec),
    }
}

/// One marked index at a random position, searched within one round budget.
fn qsearch_scaling(spec: &ExperimentSpec) -> Result<Vec<CsvRow>> {
    let mut rows = Vec::new();
    for (p, &n) in spec.n_values.iter().enumerate() {
        let mut tally = Tally::default();
        for t in 0..spec.trials {
            let mut rng = rng_for(spec, p, t);
            let target = rng.gen_range(0..n);
            let pred = FnPredicate::new(n, |i| i == target);
            let mut ledger = QueryLedger::new();
            let found = qsearch(
                &pred,
                &mut rng,
                &spec.search,
                spec.search.round_budget(n),
                &mut ledger,
            );
            tally.push(found == Some(target), ledger, None);
        }
        let mut row = base_row(spec, "single-marked", false);
        row.n = Some(n);
        row.big_n = Some(n);
        tally.fill(&mut row)?;
        rows.push(row);
    }
    let template = base_row(spec, "single-marked", false);
    summarize(
        &mut rows,
        template,
        |r| as_f64(r.n),
        |r| r.mean_quantum_queries,
    );
    Ok(rows)
}

/// Uniform random sequences; success means the true maximum value was found.
fn maxfind_success(spec: &ExperimentSpec) -> Result<Vec<CsvRow>> {
    let mut rows = Vec::new();
    for (p, &n) in spec.n_values.iter().enumerate() {
        let mut tally = Tally::default();
        for t in 0..spec.trials {
            let mut rng = rng_for(spec, p, t);
            let values: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
            let truth = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let res = find_maximum(&values, &mut rng, &spec.search)?;
            tally.push(res.value == truth, res.ledger, Some(truth - res.value));
        }
        let mut row = base_row(spec, "uniform-random", false);
        row.n = Some(n);
        row.big_n = Some(n);
        tally.fill(&mut row)?;
        rows.push(row);
    }
    let template = base_row(spec, "uniform-random", false);
    summarize(
        &mut rows,
        template,
        |r| as_f64(r.n),
        |r| r.mean_quantum_queries,
    );
    Ok(rows)
}

fn test_function(spec: &ExperimentSpec) -> Result<Box<dyn HolderFunction>> {
    make_function(&spec.function, spec.class)
}

fn abs_error(f: &dyn HolderFunction, value: f64) -> Option<f64> {
    f.known_max().map(|m| (m - value).abs())
}

/// Fixed grids; the summary fits the error quantile against `n`.
fn holder_error_vs_n(spec: &ExperimentSpec) -> Result<Vec<CsvRow>> {
    let f = test_function(spec)?;
    if f.known_max().is_none() {
        return Err(Error::InvalidParameter(format!(
            "function {} has no known maximum",
            spec.function
        )));
    }
    let mut rows = Vec::new();
    for (p, &n) in spec.n_values.iter().enumerate() {
        let mut params = MaximizerParams::with_n(n);
        params.search = spec.search;
        let mut tally = Tally::default();
        let mut big_n = 0;
        for t in 0..spec.trials {
            let mut rng = rng_for(spec, p, t);
            let res = quantum_maximize(f.as_ref(), &params, &mut rng)?;
            big_n = n.pow(spec.class.d as u32);
            tally.push(res.success, res.ledger, abs_error(f.as_ref(), res.value));
        }
        let mut row = base_row(spec, &spec.function, true);
        row.n = Some(n);
        row.big_n = Some(big_n);
        tally.fill(&mut row)?;
        rows.push(row);
    }
    let template = base_row(spec, &spec.function, true);
    summarize(&mut rows, template, |r| as_f64(r.n), |r| r.error_quantile);
    Ok(rows)
}

/// Accuracy sweep of the quantum maximizer; the summary fits mean quantum
/// queries against `epsilon`.
fn holder_queries_vs_eps(spec: &ExperimentSpec) -> Result<Vec<CsvRow>> {
    let f = test_function(spec)?;
    let mut rows = Vec::new();
    for (p, eps) in spec.eps_sweep().into_iter().enumerate() {
        let mut params = MaximizerParams::new(eps);
        params.search = spec.search;
        let n = params.resolve_n(spec.class)?;
        let mut tally = Tally::default();
        for t in 0..spec.trials {
            let mut rng = rng_for(spec, p, t);
            let res = quantum_maximize(f.as_ref(), &params, &mut rng)?;
            tally.push(res.success, res.ledger, abs_error(f.as_ref(), res.value));
        }
        let mut row = base_row(spec, &spec.function, true);
        row.n = Some(n);
        row.big_n = Some(n.pow(spec.class.d as u32));
        row.epsilon = Some(eps);
        tally.fill(&mut row)?;
        rows.push(row);
    }
    let template = base_row(spec, &spec.function, true);
    summarize(
        &mut rows,
        template,
        |r| r.epsilon,
        |r| r.mean_quantum_queries,
    );
    Ok(rows)
}

/// Accuracy sweep of the deterministic full scan. The scan involves no
/// randomness, so each point is a single run and `trials` is reported as 1.
fn baseline_queries_vs_eps(spec: &ExperimentSpec) -> Result<Vec<CsvRow>> {
    let f = test_function(spec)?;
    let mut rows = Vec::new();
    for eps in spec.eps_sweep() {
        let n = MaximizerParams::new(eps).resolve_n(spec.class)?;
        let res = grid_maximize(f.as_ref(), n)?;
        let mut tally = Tally::default();
        tally.push(true, res.ledger, abs_error(f.as_ref(), res.value));
        let mut row = base_row(spec, &spec.function, true);
        row.n = Some(n);
        row.big_n = Some(n.pow(spec.class.d as u32));
        row.epsilon = Some(eps);
        tally.fill(&mut row)?;
        rows.push(row);
    }
    let template = base_row(spec, &spec.function, true);
    summarize(
        &mut rows,
        template,
        |r| r.epsilon,
        |r| r.mean_classical_queries,
    );
    Ok(rows)
}

/// Bit patterns fed to the reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitPattern {
    AllZeros,
    SingleOne,
    Random,
}

impl BitPattern {
    pub const ALL: [BitPattern; 3] = [
        BitPattern::AllZeros,
        BitPattern::SingleOne,
        BitPattern::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BitPattern::AllZeros => "bits-zeros",
            BitPattern::SingleOne => "bits-single",
            BitPattern::Random => "bits-random",
        }
    }

    pub fn draw<R: Rng + ?Sized>(self, n: usize, rng: &mut R) -> Vec<bool> {
        match self {
            BitPattern::AllZeros => vec![false; n],
            BitPattern::SingleOne => {
                let mut bits = vec![false; n];
                bits[rng.gen_range(0..n)] = true;
                bits
            }
            BitPattern::Random => (0..n).map(|_| rng.gen()).collect(),
        }
    }
}

/// OR through the maximizer at the largest admissible bump height. `n` is the
/// number of bits; the `N` column holds the maximizer's grid size.
fn or_reduction(spec: &ExperimentSpec) -> Result<Vec<CsvRow>> {
    let params = ReductionParams {
        search: spec.search,
        ..ReductionParams::new(spec.class)
    };
    let mut rows = Vec::new();
    for (pi, pattern) in BitPattern::ALL.into_iter().enumerate() {
        let mut pattern_rows = Vec::new();
        for (ni, &n) in spec.n_values.iter().enumerate() {
            let eps1 = max_eps1(n, spec.class);
            let mut tally = Tally::default();
            let mut grid_n = 0;
            for t in 0..spec.trials {
                let mut rng = rng_for(spec, pi * spec.n_values.len() + ni, t);
                let bits = pattern.draw(n, &mut rng);
                let truth = bits.iter().any(|&b| b);
                let out = or_via_maximizer(&bits, eps1, &params, &mut rng)?;
                grid_n = out.n_grid;
                tally.push(out.bit == truth, out.ledger, None);
            }
            let mut row = base_row(spec, pattern.name(), true);
            row.n = Some(n);
            row.big_n = Some(grid_n.pow(spec.class.d as u32));
            row.epsilon = Some(eps1);
            tally.fill(&mut row)?;
            pattern_rows.push(row);
        }
        let template = base_row(spec, pattern.name(), true);
        summarize(
            &mut pattern_rows,
            template,
            |r| as_f64(r.n),
            |r| r.mean_quantum_queries,
        );
        rows.extend(pattern_rows);
    }
    Ok(rows)
}
