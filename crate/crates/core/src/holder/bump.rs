//! Smooth compactly supported bumps.
//!
//! The profile is `phi(u) = exp(1 - 1/(1 - u^2))` on `|u| < 1`, zero outside,
//! with `phi(0) = 1`. Its derivatives have the form
//! `phi^(k)(u) = phi(u) P_k(u) / (1 - u^2)^(2k)` where
//! `P_{k+1} = -2u P_k + (1-u^2)^2 P_k' + 4k u (1-u^2) P_k`, `P_0 = 1`.

use std::sync::OnceLock;

use super::{ClassParams, Grid, HolderFunction, MultiIndex};
use crate::{Error, Result};

/// Highest profile derivative available; class orders up to `MAX_ORDER - 1`.
const MAX_ORDER: usize = 12;

/// Sample count for the brute-force sup of each profile derivative.
const SUP_SAMPLES: usize = 400_001;

/// Relative margin on sampled sups.
const SUP_MARGIN: f64 = 1.01;

fn poly_eval(p: &[f64], u: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * u + c)
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

fn poly_derivative(p: &[f64]) -> Vec<f64> {
    if p.len() <= 1 {
        return vec![0.0];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| i as f64 * c)
        .collect()
}

/// The one-dimensional bump profile and its derivatives.
#[derive(Debug)]
pub struct BumpProfile {
    numerators: Vec<Vec<f64>>,
    sups: Vec<OnceLock<f64>>,
}

impl BumpProfile {
    fn build() -> Self {
        let q2 = [1.0, 0.0, -2.0, 0.0, 1.0];
        let uq = [0.0, 1.0, 0.0, -1.0];
        let mut numerators = vec![vec![1.0]];
        for k in 0..MAX_ORDER {
            let p = &numerators[k];
            let a = poly_mul(&[0.0, -2.0], p);
            let b = poly_mul(&q2, &poly_derivative(p));
            let c = poly_mul(&uq, p)
                .into_iter()
                .map(|x| x * 4.0 * k as f64)
                .collect::<Vec<_>>();
            numerators.push(poly_add(&poly_add(&a, &b), &c));
        }
        let sups = (0..=MAX_ORDER).map(|_| OnceLock::new()).collect();
        Self { numerators, sups }
    }

    /// Shared instance.
    pub fn get() -> &'static BumpProfile {
        static PROFILE: OnceLock<BumpProfile> = OnceLock::new();
        PROFILE.get_or_init(Self::build)
    }

    pub fn max_order(&self) -> u32 {
        MAX_ORDER as u32
    }

    /// `phi^(k)(u)`.
    pub fn derivative(&self, k: u32, u: f64) -> f64 {
        let q = 1.0 - u * u;
        if q <= 0.0 {
            return 0.0;
        }
        let k = k as usize;
        assert!(
            k <= MAX_ORDER,
            "profile derivative of order {k} not tabulated"
        );
        // exp(1 - 1/q) / q^(2k), combined in the exponent to avoid overflow.
        let scale = (1.0 - 1.0 / q - 2.0 * k as f64 * q.ln()).exp();
        scale * poly_eval(&self.numerators[k], u)
    }

    /// Sampled `sup |phi^(k)|` with a small relative margin.
    pub fn sup_derivative(&self, k: u32) -> f64 {
        *self.sups[k as usize].get_or_init(|| {
            let step = 2.0 / (SUP_SAMPLES - 1) as f64;
            let max = (0..SUP_SAMPLES)
                .map(|i| self.derivative(k, -1.0 + i as f64 * step).abs())
                .fold(0.0, f64::max);
            max * SUP_MARGIN
        })
    }

    /// Bound on the order-`r` Hölder-`rho` seminorm (max-norm) of the unit
    /// product bump `prod_k phi(u_k)`.
    ///
    /// For each `|a| = r`, `g = D^a` satisfies
    /// `|g(x) - g(y)| <= min(L |x-y|, 2S) <= L^rho (2S)^(1-rho) |x-y|^rho`
    /// with `S = sup |g|` and `L` the sum of sups of its first partials.
    pub fn unit_seminorm(&self, class: ClassParams) -> f64 {
        super::multi_indices_of_order(class.d, class.r)
            .iter()
            .map(|a| {
                let e = a.exponents();
                let sup: f64 = e.iter().map(|&k| self.sup_derivative(k)).product();
                let lip: f64 = (0..e.len())
                    .map(|j| {
                        e.iter()
                            .enumerate()
                            .map(|(k, &ek)| self.sup_derivative(if k == j { ek + 1 } else { ek }))
                            .product::<f64>()
                    })
                    .sum();
                lip.powf(class.rho) * (2.0 * sup).powf(1.0 - class.rho)
            })
            .fold(0.0, f64::max)
    }
}

/// `n_bumps` scaled bumps on the cells of an `m^d` grid, `m = ceil(n^(1/d))`,
/// each of height `height` and support half-width `radius = 1/(2m)`.
///
/// Neighbouring supports share a boundary face where every bump vanishes with
/// all its derivatives, so the open supports are pairwise disjoint.
#[derive(Debug, Clone)]
pub struct BumpFamily {
    class: ClassParams,
    n_bumps: usize,
    cells: Grid,
    radius: f64,
    height: f64,
    kappa: f64,
}

impl BumpFamily {
    pub fn new(n_bumps: usize, class: ClassParams, height: f64) -> Result<Self> {
        class.validate()?;
        if n_bumps == 0 {
            return Err(Error::InvalidParameter("need at least one bump".into()));
        }
        if class.r + 1 > BumpProfile::get().max_order() {
            return Err(Error::InvalidParameter(format!(
                "bump derivatives tabulated only up to r = {}",
                BumpProfile::get().max_order() - 1
            )));
        }
        let m = Self::cells_per_edge(n_bumps, class.d);
        let cells = Grid::new(m, class.d)?;
        let kappa = Self::kappa(class);
        let radius = 0.5 / m as f64;
        let bound = (kappa * radius.powf(class.smoothness())).min(1.0);
        if height.is_nan() || height <= 0.0 || height > bound {
            return Err(Error::HeightTooLarge { height, bound });
        }
        Ok(Self {
            class,
            n_bumps,
            cells,
            radius,
            height,
            kappa,
        })
    }

    /// Smallest `m` with `m^d >= n`.
    pub fn cells_per_edge(n: usize, d: usize) -> usize {
        let mut m = (n as f64).powf(1.0 / d as f64).round().max(1.0) as usize;
        while m > 1 && (m - 1).checked_pow(d as u32).is_some_and(|p| p >= n) {
            m -= 1;
        }
        while m.checked_pow(d as u32).is_some_and(|p| p < n) {
            m += 1;
        }
        m
    }

    /// Scale factor: a bump of radius `R` stays in the class while
    /// `height <= kappa * R^(r+rho)`.
    pub fn kappa(class: ClassParams) -> f64 {
        1.0 / BumpProfile::get().unit_seminorm(class)
    }

    /// Largest admissible height for a family of `n_bumps`.
    pub fn max_height(n_bumps: usize, class: ClassParams) -> f64 {
        let m = Self::cells_per_edge(n_bumps.max(1), class.d);
        let radius = 0.5 / m as f64;
        (Self::kappa(class) * radius.powf(class.smoothness())).min(1.0)
    }

    pub fn class(&self) -> ClassParams {
        self.class
    }

    pub fn n_bumps(&self) -> usize {
        self.n_bumps
    }

    pub fn cells_per_side(&self) -> usize {
        self.cells.n()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn scale_factor(&self) -> f64 {
        self.kappa
    }

    pub fn center(&self, i: usize) -> Vec<f64> {
        self.cells.center(i)
    }

    pub fn centers(&self) -> Vec<Vec<f64>> {
        (0..self.n_bumps).map(|i| self.center(i)).collect()
    }

    /// Bump whose cell contains `t`, if that cell carries a bump.
    pub fn covering(&self, t: &[f64]) -> Option<usize> {
        let i = self.cells.locate(t);
        (i < self.n_bumps).then_some(i)
    }

    /// `D^alpha f_i(t)`.
    pub fn bump_partial(&self, i: usize, alpha: &MultiIndex, t: &[f64]) -> f64 {
        let profile = BumpProfile::get();
        let center = self.cells.center(i);
        let mut v = self.height;
        for (k, (&x, c)) in t.iter().zip(&center).enumerate() {
            let u = (x - c) / self.radius;
            if u.abs() >= 1.0 {
                return 0.0;
            }
            let e = alpha.exponents()[k];
            v *= profile.derivative(e, u) / self.radius.powi(e as i32);
        }
        v
    }

    pub fn member(&self, i: usize) -> BumpMember<'_> {
        assert!(i < self.n_bumps, "bump {i} out of range");
        BumpMember {
            family: self,
            index: i,
        }
    }

    /// Declared seminorm bound of every member.
    pub fn member_seminorm(&self) -> f64 {
        self.height * self.radius.powf(-self.class.smoothness()) / self.kappa
    }
}

/// One member `f_i` of a [`BumpFamily`].
#[derive(Debug, Clone, Copy)]
pub struct BumpMember<'a> {
    family: &'a BumpFamily,
    index: usize,
}

impl BumpMember<'_> {
    pub fn index(&self) -> usize {
        self.index
    }
}

impl HolderFunction for BumpMember<'_> {
    fn class(&self) -> ClassParams {
        self.family.class
    }

    fn partial(&self, alpha: &MultiIndex, t: &[f64]) -> f64 {
        self.family.bump_partial(self.index, alpha, t)
    }

    fn sup_bound(&self) -> f64 {
        self.family.height
    }

    fn seminorm_bound(&self) -> f64 {
        self.family.member_seminorm()
    }

    fn known_max(&self) -> Option<f64> {
        Some(self.family.height)
    }
}
