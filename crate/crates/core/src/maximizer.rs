//! Quantum maximization of Hölder-class functions.
//!
//! `[0,1]^d` is split into `N = n^d` cubes. On each cube the Taylor model at
//! the center is maximized classically to tolerance `eps1`, using no further
//! function values, and the largest of the `N` local maxima is found with
//! [`find_maximum`]. The error is at most `(H + 1) (1/n)^(r+rho)` when the
//! discrete search succeeds, at a cost of `O(n^(d/2))` quantum queries.
//!
//! Local maxima are built lazily and memoized. The simulated phase oracle
//! touches every index on each Grover iterate, so in practice every center is
//! evaluated once per run; the model cost that matters is the quantum-query
//! count, which is independent of that simulation work.

use std::cell::{Cell, OnceCell, RefCell};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::Rng;

use crate::holder::{
    taylor_model, ClassParams, Grid, HolderFunction, TaylorModel, DEFAULT_GRID_CAP,
};
use crate::qcore::QueryLedger;
use crate::search::{find_maximum, SearchParams, Sequence};
use crate::{Error, Result};

/// Safety cap on boxes examined by one certified local maximization.
const MAX_BOXES: usize = 1 << 20;

/// Tolerance rule for the local maximizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eps1Policy {
    /// `eps1 = (1/n)^(r+rho)`.
    GridPower,
    Fixed(f64),
}

impl Eps1Policy {
    pub fn eps1(&self, n: usize, class: ClassParams) -> f64 {
        match *self {
            Eps1Policy::GridPower => (1.0 / n as f64).powf(class.smoothness()),
            Eps1Policy::Fixed(e) => e,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximizerParams {
    pub epsilon: f64,
    pub n_override: Option<usize>,
    pub eps1_policy: Eps1Policy,
    /// Remainder constant; `None` uses `d^r / r!`.
    pub h_conf: Option<f64>,
    pub search: SearchParams,
    pub grid_cap: usize,
}

impl MaximizerParams {
    pub fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            n_override: None,
            eps1_policy: Eps1Policy::GridPower,
            h_conf: None,
            search: SearchParams::default(),
            grid_cap: DEFAULT_GRID_CAP,
        }
    }

    /// Fixed subdivision, ignoring `epsilon`.
    pub fn with_n(n: usize) -> Self {
        Self {
            n_override: Some(n),
            ..Self::new(1.0)
        }
    }

    pub fn h_conf(&self, class: ClassParams) -> f64 {
        self.h_conf.unwrap_or_else(|| class.default_h_conf())
    }

    /// Subdivisions per edge for `class`.
    pub fn resolve_n(&self, class: ClassParams) -> Result<usize> {
        match self.n_override {
            Some(0) => Err(Error::InvalidParameter("n must be >= 1".into())),
            Some(n) => Ok(n),
            None => choose_n_capped(
                self.epsilon,
                class.d,
                class.r,
                class.rho,
                self.h_conf(class),
                self.grid_cap,
            ),
        }
    }
}

/// Result of a continuous maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct HolderMaxResult {
    pub value: f64,
    /// Index of the winning cube.
    pub witness: usize,
    /// Center of the winning cube.
    pub point: Vec<f64>,
    pub n: usize,
    pub eps1: f64,
    pub success: bool,
    /// Distinct cubes whose Taylor model was built.
    pub cubes_touched: usize,
    pub ledger: QueryLedger,
}

/// Error bound `(H + 1) (1/n)^(r+rho)` for `eps1 = (1/n)^(r+rho)`.
pub fn error_bound(class: ClassParams, n: usize, h_conf: f64) -> f64 {
    (h_conf + 1.0) * (1.0 / n as f64).powf(class.smoothness())
}

/// Smallest `n` with `(H + 1) (1/n)^(r+rho) <= epsilon`.
pub fn choose_n(epsilon: f64, d: usize, r: u32, rho: f64, h_conf: f64) -> Result<usize> {
    choose_n_capped(epsilon, d, r, rho, h_conf, DEFAULT_GRID_CAP)
}

pub fn choose_n_capped(
    epsilon: f64,
    d: usize,
    r: u32,
    rho: f64,
    h_conf: f64,
    cap: usize,
) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let class = ClassParams::new(d, r, rho)?;
    let p = class.smoothness();
    let bound = |n: f64| (h_conf + 1.0) * n.powf(-p);
    let guess = ((h_conf + 1.0) / epsilon).powf(1.0 / p).ceil().max(1.0);
    if !guess.is_finite() || guess > usize::MAX as f64 / 2.0 {
        return Err(Error::GridTooLarge {
            n: usize::MAX,
            d,
            cap,
        });
    }
    // The closed form can land one off under rounding; settle on the exact
    // smallest admissible n.
    let mut n = guess as usize;
    let slack = epsilon * (1.0 + 1e-12);
    while n > 1 && bound((n - 1) as f64) <= slack {
        n -= 1;
    }
    while bound(n as f64) > slack {
        n += 1;
    }
    Grid::with_cap(n, d, cap)?;
    Ok(n)
}

struct SearchBox {
    upper: f64,
    center: Vec<f64>,
    half: Vec<f64>,
}

impl PartialEq for SearchBox {
    fn eq(&self, other: &Self) -> bool {
        self.upper.total_cmp(&other.upper) == Ordering::Equal
    }
}

impl Eq for SearchBox {}

impl PartialOrd for SearchBox {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SearchBox {
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper.total_cmp(&other.upper)
    }
}

/// Offset-space partial derivatives of a Taylor model, as
/// `(coefficient, exponents)` monomials per coordinate.
struct Gradient {
    partials: Vec<Vec<(f64, Vec<u32>)>>,
}

impl Gradient {
    fn of(model: &TaylorModel) -> Self {
        let d = model.dim();
        let partials = (0..d)
            .map(|j| {
                model
                    .terms()
                    .iter()
                    .filter(|(a, _)| a.exponents()[j] > 0)
                    .map(|(a, c)| {
                        let mut e = a.exponents().to_vec();
                        let k = e[j];
                        e[j] -= 1;
                        (c * f64::from(k), e)
                    })
                    .collect()
            })
            .collect();
        Self { partials }
    }

    /// `sum_j s_j sup_box |d_j w|`, each sup bounded monomial by monomial
    /// using `|x_k| <= |z_k| + s_k` on the box.
    fn variation_bound(&self, center: &[f64], half: &[f64]) -> f64 {
        let reach: Vec<f64> = center.iter().zip(half).map(|(z, s)| z.abs() + s).collect();
        self.partials
            .iter()
            .zip(half)
            .map(|(terms, s)| {
                s * terms
                    .iter()
                    .map(|(c, e)| {
                        c.abs()
                            * e.iter()
                                .zip(&reach)
                                .map(|(&k, m)| m.powi(k as i32))
                                .product::<f64>()
                    })
                    .sum::<f64>()
            })
            .sum()
    }
}

/// Maximum of `model` over the box `[lo, hi]` to within `eps1`.
///
/// Orders 0 and 1 are solved in closed form. Higher orders use best-first
/// box refinement: each box's upper bound is its center value plus a
/// gradient bound, and the search stops once the best upper bound is within
/// `eps1` of the best attained value, which is returned.
pub fn local_max_taylor(model: &TaylorModel, lo: &[f64], hi: &[f64], eps1: f64) -> f64 {
    let c = model.center();
    let lo: Vec<f64> = lo.iter().zip(c).map(|(a, z)| a - z).collect();
    let hi: Vec<f64> = hi.iter().zip(c).map(|(b, z)| b - z).collect();
    match model.order() {
        0 => model.constant(),
        1 => {
            let d = model.dim();
            let mut v = model.constant();
            for (a, coef) in model.terms() {
                if a.order() == 1 {
                    let j = a.support().next().expect("order one").0;
                    v += if *coef > 0.0 {
                        coef * hi[j]
                    } else {
                        coef * lo[j]
                    };
                }
            }
            debug_assert_eq!(lo.len(), d);
            v
        }
        _ => refine(model, &lo, &hi, eps1),
    }
}

fn refine(model: &TaylorModel, lo: &[f64], hi: &[f64], eps1: f64) -> f64 {
    let grad = Gradient::of(model);
    let make = |center: Vec<f64>, half: Vec<f64>| -> (SearchBox, f64) {
        let value = model.eval_offset(&center);
        let upper = value + grad.variation_bound(&center, &half);
        (
            SearchBox {
                upper,
                center,
                half,
            },
            value,
        )
    };
    let center: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| 0.5 * (a + b)).collect();
    let half: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| 0.5 * (b - a)).collect();
    let (root, mut best) = make(center, half);
    let mut heap = BinaryHeap::from([root]);
    let d = lo.len();
    let mut examined = 0usize;
    while let Some(top) = heap.pop() {
        if top.upper - best <= eps1 || examined >= MAX_BOXES {
            break;
        }
        let half: Vec<f64> = top.half.iter().map(|s| 0.5 * s).collect();
        for corner in 0..(1usize << d) {
            let center: Vec<f64> = (0..d)
                .map(|k| {
                    let sign = if corner >> k & 1 == 1 { 1.0 } else { -1.0 };
                    top.center[k] + sign * half[k]
                })
                .collect();
            let (child, value) = make(center, half.clone());
            best = best.max(value);
            heap.push(child);
        }
        examined += 1;
    }
    best
}

/// Lazily built local maxima `m~_i` over a grid, memoized per cube.
pub struct LocalMaxima<'a> {
    f: &'a dyn HolderFunction,
    grid: Grid,
    eps1: f64,
    cache: Vec<OnceCell<f64>>,
    touched: Cell<usize>,
    failure: RefCell<Option<Error>>,
}

impl<'a> LocalMaxima<'a> {
    pub fn new(f: &'a dyn HolderFunction, grid: Grid, eps1: f64) -> Self {
        Self {
            f,
            grid,
            eps1,
            cache: (0..grid.len()).map(|_| OnceCell::new()).collect(),
            touched: Cell::new(0),
            failure: RefCell::new(None),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn class(&self) -> ClassParams {
        self.f.class()
    }

    fn compute(&self, i: usize) -> f64 {
        self.touched.set(self.touched.get() + 1);
        let mut scratch = QueryLedger::new();
        match taylor_model(self.f, &self.grid.center(i), &mut scratch) {
            Ok(model) => {
                let (lo, hi) = self.grid.bounds(i);
                local_max_taylor(&model, &lo, &hi, self.eps1)
            }
            Err(e) => {
                self.failure.borrow_mut().get_or_insert(e);
                f64::NEG_INFINITY
            }
        }
    }

    pub fn get(&self, i: usize) -> f64 {
        *self.cache[i].get_or_init(|| self.compute(i))
    }

    /// Distinct cubes whose model has been built.
    pub fn touched(&self) -> usize {
        self.touched.get()
    }

    /// Evaluations charged so far: one Taylor model per touched cube.
    pub fn evaluations(&self) -> u64 {
        self.touched() as u64 * self.f.class().coefficient_count()
    }

    pub fn take_failure(&self) -> Option<Error> {
        self.failure.borrow_mut().take()
    }

    /// Every `m~_i`, forcing all of them.
    pub fn all(&self) -> Vec<f64> {
        (0..self.grid.len()).map(|i| self.get(i)).collect()
    }
}

impl Sequence for LocalMaxima<'_> {
    fn len(&self) -> usize {
        self.grid.len()
    }

    fn value(&self, index: usize) -> f64 {
        self.get(index)
    }
}

/// Monotone affine map of the local maxima into `[0, 1]`.
struct Rescaled<'s, 'a> {
    inner: &'s LocalMaxima<'a>,
    offset: f64,
    range: f64,
}

impl Sequence for Rescaled<'_, '_> {
    fn len(&self) -> usize {
        self.inner.len()
    }

    fn value(&self, index: usize) -> f64 {
        ((self.inner.get(index) - self.offset) / self.range).clamp(0.0, 1.0)
    }
}

/// Maximum of `f` to within `(H + 1) (1/n)^(r+rho)` with probability at
/// least `1 - 2^-boost_rounds`.
pub fn quantum_maximize<R: Rng + ?Sized>(
    f: &dyn HolderFunction,
    params: &MaximizerParams,
    rng: &mut R,
) -> Result<HolderMaxResult> {
    let class = f.class();
    class.validate()?;
    params.search.validate()?;
    let n = params.resolve_n(class)?;
    let grid = Grid::with_cap(n, class.d, params.grid_cap)?;
    let eps1 = params.eps1_policy.eps1(n, class);
    let local = LocalMaxima::new(f, grid, eps1);

    // Bound on |m~_i|: sup f plus the worst remainder and the local tolerance.
    let margin =
        params.h_conf(class) * f.seminorm_bound().max(1.0) * grid.edge().powf(class.smoothness())
            + eps1;
    let reach = f.sup_bound() + margin;
    let scaled = Rescaled {
        inner: &local,
        offset: -reach,
        range: 2.0 * reach.max(f64::MIN_POSITIVE),
    };
    let found = find_maximum(&scaled, rng, &params.search)?;
    if let Some(e) = local.take_failure() {
        return Err(e);
    }
    let mut ledger = found.ledger;
    ledger.charge_evaluations(local.evaluations());
    Ok(HolderMaxResult {
        value: local.get(found.witness),
        witness: found.witness,
        point: grid.center(found.witness),
        n,
        eps1,
        success: found.success,
        cubes_touched: local.touched(),
        ledger,
    })
}
