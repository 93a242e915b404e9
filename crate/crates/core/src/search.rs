//! Exponential searching and threshold extremum finding over a sequence.
//!
//! [`qsearch`] handles an unknown number of marked items by drawing the
//! Grover iteration count uniformly from a range that grows geometrically.
//! [`find_maximum`] and [`find_minimum`] repeatedly search for an index that
//! strictly beats the current threshold until the quantum-query budget
//! `ceil(budget_factor * sqrt(n))` is spent, then boost by independent rounds.

use rand::Rng;

use crate::qcore::{MarkPredicate, MarkSet, QueryLedger, SubspaceState};
use crate::{Error, Result};

/// Constants of the search routines. The asymptotic analysis fixes none of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchParams {
    /// Growth factor of the iteration-count range, in `(1, 4/3]`.
    pub lambda: f64,
    /// Quantum-query cutoff per round is `ceil(budget_factor * sqrt(n))`.
    pub budget_factor: f64,
    /// Independent repetitions of the extremum finder; the best value wins.
    pub boost_rounds: u32,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            lambda: 8.0 / 7.0,
            budget_factor: 22.5,
            boost_rounds: 2,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 1.0 && self.lambda <= 4.0 / 3.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must lie in (1, 4/3], got {}",
                self.lambda
            )));
        }
        if !(self.budget_factor > 0.0 && self.budget_factor.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "budget factor must be positive, got {}",
                self.budget_factor
            )));
        }
        if self.boost_rounds == 0 {
            return Err(Error::InvalidParameter(
                "boost rounds must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Per-round quantum-query budget for a sequence of length `n`.
    pub fn round_budget(&self, n: usize) -> u64 {
        (self.budget_factor * (n as f64).sqrt()).ceil() as u64
    }

    /// Upper bound on quantum queries over all boosting rounds.
    pub fn total_budget(&self, n: usize) -> u64 {
        self.round_budget(n) * u64::from(self.boost_rounds)
    }
}

/// Read access to a sequence of reals.
pub trait Sequence {
    fn len(&self) -> usize;
    fn value(&self, index: usize) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Sequence for [f64] {
    fn len(&self) -> usize {
        <[f64]>::len(self)
    }

    fn value(&self, index: usize) -> f64 {
        self[index]
    }
}

impl Sequence for Vec<f64> {
    fn len(&self) -> usize {
        Vec::len(self)
    }

    fn value(&self, index: usize) -> f64 {
        self[index]
    }
}

/// A sequence of values in `[0, 1]`, as the discrete problem assumes.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceOracle {
    values: Vec<f64>,
}

impl SequenceOracle {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParameter(format!(
                "sequence value {v} outside [0, 1]"
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl Sequence for SequenceOracle {
    fn len(&self) -> usize {
        self.values.len()
    }

    fn value(&self, index: usize) -> f64 {
        self.values[index]
    }
}

/// Outcome of one extremum search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxResult {
    pub value: f64,
    pub witness: usize,
    /// The final threshold survived a search with at least `ceil(sqrt(n))`
    /// queries of allotment, rather than being cut off by the budget.
    pub success: bool,
    pub ledger: QueryLedger,
}

/// Exponential searching for a marked index.
///
/// Returns a marked index, verified classically, or `None` once `max_queries`
/// quantum queries are spent. The mark set is tabulated once per call; each
/// Grover iterate is charged as one quantum query. Registers are simulated in
/// their invariant plane ([`SubspaceState`]), which is exact for searches
/// started from the uniform state.
pub fn qsearch<P, R>(
    pred: &P,
    rng: &mut R,
    params: &SearchParams,
    max_queries: u64,
    ledger: &mut QueryLedger,
) -> Option<usize>
where
    P: MarkPredicate + ?Sized,
    R: Rng + ?Sized,
{
    let dim = pred.dim();
    if dim == 0 {
        return None;
    }
    let marks = MarkSet::tabulate(pred);
    let marked: Vec<usize> = (0..dim).filter(|&i| marks.is_marked(i)).collect();
    // Cap of at least 2 so that a one-element register still spends queries.
    let cap = (dim as f64).sqrt().max(2.0);
    let mut m = 1.0_f64;
    let mut used = 0u64;
    while used < max_queries {
        let range = m.ceil() as u64;
        let j = rng.gen_range(0..range).min(max_queries - used);
        let mut state = SubspaceState::uniform(dim, marked.len()).expect("dim >= 1");
        for _ in 0..j {
            state.grover_iteration(ledger);
        }
        used += j;
        ledger.charge_classical(1);
        if state.measure_marked(rng) {
            return Some(marked[rng.gen_range(0..marked.len())]);
        }
        m = (params.lambda * m).min(cap);
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Maximum,
    Minimum,
}

impl Extremum {
    /// Strict improvement; ties never count.
    fn improves(self, candidate: f64, threshold: f64) -> bool {
        match self {
            Extremum::Maximum => candidate > threshold,
            Extremum::Minimum => candidate < threshold,
        }
    }
}

/// Threshold indices visited by each boosting round, in order.
pub type ThresholdTrace = Vec<Vec<usize>>;

struct Round {
    witness: usize,
    success: bool,
    thresholds: Vec<usize>,
}

fn run_round<S, R>(
    seq: &S,
    extremum: Extremum,
    rng: &mut R,
    params: &SearchParams,
    ledger: &mut QueryLedger,
) -> Round
where
    S: Sequence + ?Sized,
    R: Rng + ?Sized,
{
    let n = seq.len();
    let budget = params.round_budget(n);
    let adequate = (n as f64).sqrt().ceil() as u64;
    let start = ledger.quantum_queries;

    let mut threshold = rng.gen_range(0..n);
    ledger.charge_classical(1);
    let mut thresholds = vec![threshold];
    let mut success = false;
    loop {
        let remaining = budget - (ledger.quantum_queries - start);
        if remaining == 0 {
            break;
        }
        let current = seq.value(threshold);
        let pred = crate::qcore::FnPredicate::new(n, |i| extremum.improves(seq.value(i), current));
        match qsearch(&pred, rng, params, remaining, ledger) {
            Some(i) => {
                threshold = i;
                thresholds.push(i);
            }
            None => {
                success = remaining >= adequate;
                break;
            }
        }
    }
    Round {
        witness: threshold,
        success,
        thresholds,
    }
}

/// Extremum search returning the per-round threshold chains as well.
pub fn find_extremum_traced<S, R>(
    seq: &S,
    extremum: Extremum,
    rng: &mut R,
    params: &SearchParams,
) -> Result<(MaxResult, ThresholdTrace)>
where
    S: Sequence + ?Sized,
    R: Rng + ?Sized,
{
    params.validate()?;
    if seq.is_empty() {
        return Err(Error::ZeroDimension);
    }
    let mut ledger = QueryLedger::new();
    let mut best: Option<Round> = None;
    let mut trace = Vec::with_capacity(params.boost_rounds as usize);
    for _ in 0..params.boost_rounds {
        let round = run_round(seq, extremum, rng, params, &mut ledger);
        trace.push(round.thresholds.clone());
        let better = match &best {
            None => true,
            Some(b) => extremum.improves(seq.value(round.witness), seq.value(b.witness)),
        };
        if better {
            best = Some(round);
        }
    }
    let best = best.expect("boost_rounds >= 1");
    let result = MaxResult {
        value: seq.value(best.witness),
        witness: best.witness,
        success: best.success,
        ledger,
    };
    Ok((result, trace))
}

pub fn find_maximum<S, R>(seq: &S, rng: &mut R, params: &SearchParams) -> Result<MaxResult>
where
    S: Sequence + ?Sized,
    R: Rng + ?Sized,
{
    find_extremum_traced(seq, Extremum::Maximum, rng, params).map(|(r, _)| r)
}

pub fn find_minimum<S, R>(seq: &S, rng: &mut R, params: &SearchParams) -> Result<MaxResult>
where
    S: Sequence + ?Sized,
    R: Rng + ?Sized,
{
    find_extremum_traced(seq, Extremum::Minimum, rng, params).map(|(r, _)| r)
}
