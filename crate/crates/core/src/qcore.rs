//! Statevector simulation over an abstract N-dimensional Hilbert space.
//!
//! The register is indexed by `0..N` for any `N >= 1`; nothing is padded to
//! a power of two. The Grover iterate is the phase oracle (sign flip on marked
//! indices) followed by the reflection `2|u><u| - I` about the uniform state.

use std::ops::AddAssign;

use num_complex::Complex64;
use rand::Rng;

use crate::{Error, Result};

/// Tolerance for unit-norm checks on constructed states.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Query-model cost counters for one run.
///
/// Counters only ever grow. A ledger is owned by exactly one run; concurrent
/// runs keep their own and merge afterwards.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryLedger {
    /// Applications of the phase oracle to the whole register.
    pub quantum_queries: u64,
    /// Classical lookups or comparisons of individual values.
    pub classical_queries: u64,
    /// Function and partial-derivative values consumed.
    pub evaluations: u64,
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge_quantum(&mut self, queries: u64) {
        self.quantum_queries += queries;
    }

    pub fn charge_classical(&mut self, queries: u64) {
        self.classical_queries += queries;
    }

    pub fn charge_evaluations(&mut self, values: u64) {
        self.evaluations += values;
    }
}

impl AddAssign for QueryLedger {
    fn add_assign(&mut self, rhs: Self) {
        self.quantum_queries += rhs.quantum_queries;
        self.classical_queries += rhs.classical_queries;
        self.evaluations += rhs.evaluations;
    }
}

/// A total, deterministic marking of the indices `0..dim`.
pub trait MarkPredicate {
    fn dim(&self) -> usize;
    fn is_marked(&self, index: usize) -> bool;

    fn count_marked(&self) -> usize {
        (0..self.dim()).filter(|&i| self.is_marked(i)).count()
    }
}

/// Predicate backed by a closure.
pub struct FnPredicate<F> {
    dim: usize,
    marks: F,
}

impl<F: Fn(usize) -> bool> FnPredicate<F> {
    pub fn new(dim: usize, marks: F) -> Self {
        Self { dim, marks }
    }
}

impl<F: Fn(usize) -> bool> MarkPredicate for FnPredicate<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn is_marked(&self, index: usize) -> bool {
        (self.marks)(index)
    }
}

/// Predicate given by an explicit mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkSet {
    mask: Vec<bool>,
}

impl MarkSet {
    pub fn from_mask(mask: Vec<bool>) -> Self {
        Self { mask }
    }

    pub fn from_indices(dim: usize, marked: &[usize]) -> Self {
        let mut mask = vec![false; dim];
        for &i in marked {
            mask[i] = true;
        }
        Self { mask }
    }

    /// Evaluates `pred` once on every index.
    pub fn tabulate<P: MarkPredicate + ?Sized>(pred: &P) -> Self {
        Self {
            mask: (0..pred.dim()).map(|i| pred.is_marked(i)).collect(),
        }
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
}

impl MarkPredicate for MarkSet {
    fn dim(&self) -> usize {
        self.mask.len()
    }

    fn is_marked(&self, index: usize) -> bool {
        self.mask[index]
    }
}

/// Unit-norm vector of complex amplitudes over `0..dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Equal superposition `1/sqrt(dim)` over all indices.
    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self { amps: vec![a; dim] })
    }

    /// Wraps explicit amplitudes, which must already have unit norm.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "amplitudes have squared norm {norm}, expected 1"
            )));
        }
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Total probability on indices marked by `pred`.
    pub fn marked_mass<P: MarkPredicate + ?Sized>(&self, pred: &P) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| pred.is_marked(*i))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// One Grover iterate: phase oracle, then diffusion. Charges one quantum query.
    pub fn grover_iteration<P: MarkPredicate + ?Sized>(
        &mut self,
        pred: &P,
        ledger: &mut QueryLedger,
    ) -> Result<()> {
        if pred.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                state: self.dim(),
                predicate: pred.dim(),
            });
        }
        for (i, a) in self.amps.iter_mut().enumerate() {
            if pred.is_marked(i) {
                *a = -*a;
            }
        }
        self.diffuse();
        ledger.charge_quantum(1);
        Ok(())
    }

    /// Reflection about the uniform state: `a_i -> 2 mean - a_i`.
    fn diffuse(&mut self) {
        let sum: Complex64 = self.amps.iter().sum();
        let twice_mean = sum * (2.0 / self.dim() as f64);
        for a in &mut self.amps {
            *a = twice_mean - *a;
        }
    }

    /// Projective measurement in the computational basis.
    pub fn measure<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = self.norm_sqr();
        let target = rng.gen::<f64>() * total;
        let mut acc = 0.0;
        let mut last_nonzero = 0;
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p > 0.0 {
                last_nonzero = i;
            }
            acc += p;
            if target < acc {
                return i;
            }
        }
        // Rounding left `target` past the accumulated mass.
        last_nonzero
    }
}

/// `uniform_state` as a free function.
pub fn uniform_state(dim: usize) -> Result<StateVector> {
    StateVector::uniform(dim)
}

/// Marked mass after `j` Grover iterates from the uniform state with `k` of
/// `n` indices marked: `sin^2((2j+1) theta)`, `sin theta = sqrt(k/n)`.
pub fn grover_success_probability(n: usize, k: usize, j: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if k > n {
        return Err(Error::MarkedOutOfRange { marked: k, dim: n });
    }
    if k == 0 {
        return Ok(0.0);
    }
    let theta = (k as f64 / n as f64).sqrt().asin();
    let s = ((2 * j + 1) as f64 * theta).sin();
    Ok((s * s).clamp(0.0, 1.0))
}

/// A Grover register started in the uniform state, tracked in the invariant
/// plane spanned by the uniform superpositions over marked and unmarked
/// indices.
///
/// Oracle and diffusion map that plane to itself, so two real amplitudes
/// describe the state exactly and one iterate costs O(1) instead of O(dim).
/// [`SubspaceState::to_state_vector`] expands back to the full register.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubspaceState {
    dim: usize,
    marked: usize,
    /// Amplitude on each marked index.
    a_marked: f64,
    /// Amplitude on each unmarked index.
    a_unmarked: f64,
}

impl SubspaceState {
    pub fn uniform(dim: usize, marked: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if marked > dim {
            return Err(Error::MarkedOutOfRange { marked, dim });
        }
        let a = 1.0 / (dim as f64).sqrt();
        Ok(Self {
            dim,
            marked,
            a_marked: a,
            a_unmarked: a,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn marked_count(&self) -> usize {
        self.marked
    }

    /// `(marked, unmarked)` per-index amplitudes.
    pub fn amplitudes(&self) -> (f64, f64) {
        (self.a_marked, self.a_unmarked)
    }

    /// Same iterate as [`StateVector::grover_iteration`]; charges one query.
    pub fn grover_iteration(&mut self, ledger: &mut QueryLedger) {
        let k = self.marked as f64;
        let rest = (self.dim - self.marked) as f64;
        let flipped = -self.a_marked;
        let twice_mean = 2.0 * (k * flipped + rest * self.a_unmarked) / self.dim as f64;
        self.a_marked = twice_mean - flipped;
        self.a_unmarked = twice_mean - self.a_unmarked;
        ledger.charge_quantum(1);
    }

    pub fn marked_mass(&self) -> f64 {
        self.marked as f64 * self.a_marked * self.a_marked
    }

    pub fn norm_sqr(&self) -> f64 {
        self.marked_mass() + (self.dim - self.marked) as f64 * self.a_unmarked * self.a_unmarked
    }

    /// Measures the register and reports whether the outcome is marked. A
    /// marked outcome is uniform over the marked indices.
    pub fn measure_marked<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        rng.gen::<f64>() * self.norm_sqr() < self.marked_mass()
    }

    /// Full register for the marking `marks`, which must mark
    /// `marked_count()` of `dim()` indices.
    pub fn to_state_vector(&self, marks: &MarkSet) -> Result<StateVector> {
        if marks.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                state: self.dim,
                predicate: marks.dim(),
            });
        }
        let count = marks.mask().iter().filter(|&&m| m).count();
        if count != self.marked {
            return Err(Error::InvalidParameter(format!(
                "marking has {count} marked indices, state expects {}",
                self.marked
            )));
        }
        let amps = marks
            .mask()
            .iter()
            .map(|&m| Complex64::new(if m { self.a_marked } else { self.a_unmarked }, 0.0))
            .collect();
        Ok(StateVector { amps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn subspace_state_tracks_the_full_register() {
        let mut rng = seeded(12);
        for dim in 1..=40 {
            let mask: Vec<bool> = (0..dim).map(|_| rng.gen_bool(0.3)).collect();
            let marks = MarkSet::from_mask(mask);
            let k = marks.mask().iter().filter(|&&m| m).count();
            let mut full = StateVector::uniform(dim).unwrap();
            let mut plane = SubspaceState::uniform(dim, k).unwrap();
            let (mut l1, mut l2) = (QueryLedger::new(), QueryLedger::new());
            for j in 0..=25u64 {
                let expanded = plane.to_state_vector(&marks).unwrap();
                for (a, b) in full.amplitudes().iter().zip(expanded.amplitudes()) {
                    assert!((a - b).norm() < 1e-12, "dim={dim} k={k} j={j}");
                }
                let p = grover_success_probability(dim, k, j).unwrap();
                assert!(close(plane.marked_mass(), p, 1e-10));
                full.grover_iteration(&marks, &mut l1).unwrap();
                plane.grover_iteration(&mut l2);
            }
            assert_eq!(l1, l2);
        }
        assert_eq!(SubspaceState::uniform(0, 0), Err(Error::ZeroDimension));
        assert!(SubspaceState::uniform(3, 4).is_err());
    }

    #[test]
    fn subspace_measurement_frequency() {
        let mut rng = seeded(13);
        let mut plane = SubspaceState::uniform(64, 3).unwrap();
        let mut ledger = QueryLedger::new();
        plane.grover_iteration(&mut ledger);
        plane.grover_iteration(&mut ledger);
        let p = plane.marked_mass();
        let trials = 20_000;
        let hits = (0..trials)
            .filter(|_| plane.measure_marked(&mut rng))
            .count();
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((hits as f64 / trials as f64 - p).abs() <= 4.0 * sigma);
    }

    #[test]
    fn uniform_examples() {
        assert_eq!(uniform_state(0), Err(Error::ZeroDimension));
        let one = uniform_state(1).unwrap();
        assert_eq!(one.amplitudes(), &[Complex64::new(1.0, 0.0)]);
        let four = uniform_state(4).unwrap();
        assert!(four
            .amplitudes()
            .iter()
            .all(|a| *a == Complex64::new(0.5, 0.0)));
        let three = uniform_state(3).unwrap();
        for a in three.amplitudes() {
            assert!(close(a.re, 1.0 / 3f64.sqrt(), 1e-15));
        }
        assert!(close(three.norm_sqr(), 1.0, 1e-12));
    }

    #[test]
    fn single_mark_in_four_is_found_after_one_iterate() {
        let mut s = uniform_state(4).unwrap();
        let mut ledger = QueryLedger::new();
        s.grover_iteration(&MarkSet::from_indices(4, &[2]), &mut ledger)
            .unwrap();
        assert!(close(s.amplitudes()[2].norm(), 1.0, 1e-12));
        for i in [0, 1, 3] {
            assert!(s.amplitudes()[i].norm() < 1e-12);
        }
        assert_eq!(ledger.quantum_queries, 1);
    }

    #[test]
    fn no_marks_is_identity_all_marks_is_global_phase() {
        let mut ledger = QueryLedger::new();
        let u = uniform_state(7).unwrap();
        let mut s = u.clone();
        s.grover_iteration(&MarkSet::from_indices(7, &[]), &mut ledger)
            .unwrap();
        for (a, b) in s.amplitudes().iter().zip(u.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
        let mut s = u.clone();
        let all: Vec<usize> = (0..7).collect();
        s.grover_iteration(&MarkSet::from_indices(7, &all), &mut ledger)
            .unwrap();
        for (a, b) in s.amplitudes().iter().zip(u.amplitudes()) {
            assert!((a + b).norm() < 1e-12);
        }
        assert_eq!(ledger.quantum_queries, 2);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let mut s = uniform_state(4).unwrap();
        let mut ledger = QueryLedger::new();
        let err = s.grover_iteration(&MarkSet::from_indices(5, &[0]), &mut ledger);
        assert_eq!(
            err,
            Err(Error::DimensionMismatch {
                state: 4,
                predicate: 5
            })
        );
        assert_eq!(ledger.quantum_queries, 0);
    }

    #[test]
    fn measure_examples() {
        let mut rng = seeded(11);
        let det = StateVector::from_amplitudes(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        assert!((0..1000).all(|_| det.measure(&mut rng) == 0));

        let draws = 100_000;
        let u = uniform_state(2).unwrap();
        let zeros = (0..draws).filter(|_| u.measure(&mut rng) == 0).count();
        assert!(close(zeros as f64 / draws as f64, 0.5, 0.01));

        let s =
            StateVector::from_amplitudes(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)])
                .unwrap();
        let ones = (0..draws).filter(|_| s.measure(&mut rng) == 1).count();
        assert!(close(ones as f64 / draws as f64, 0.64, 0.01));
    }

    #[test]
    fn measurement_is_reproducible_under_seed() {
        let s = uniform_state(37).unwrap();
        let a: Vec<usize> = {
            let mut r = seeded(5);
            (0..50).map(|_| s.measure(&mut r)).collect()
        };
        let b: Vec<usize> = {
            let mut r = seeded(5);
            (0..50).map(|_| s.measure(&mut r)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn success_probability_examples() {
        assert!(close(
            grover_success_probability(4, 1, 1).unwrap(),
            1.0,
            1e-12
        ));
        for (n, k) in [(5, 2), (64, 0), (64, 64), (10, 3)] {
            assert!(close(
                grover_success_probability(n, k, 0).unwrap(),
                k as f64 / n as f64,
                1e-12
            ));
        }
        let p = grover_success_probability(64, 1, 6).unwrap();
        assert!(close(p, 0.9966, 1e-4), "{p}");
        assert!(matches!(
            grover_success_probability(4, 5, 0),
            Err(Error::MarkedOutOfRange { .. })
        ));
        assert_eq!(
            grover_success_probability(0, 0, 0),
            Err(Error::ZeroDimension)
        );
    }

    #[test]
    fn from_amplitudes_rejects_unnormalized() {
        assert!(StateVector::from_amplitudes(vec![Complex64::new(1.0, 1.0)]).is_err());
        assert_eq!(
            StateVector::from_amplitudes(vec![]),
            Err(Error::ZeroDimension)
        );
    }
}
