//! OR of a bit string through a function maximizer.
//!
//! Bits `x_i` select members of a disjoint bump family of height `eps1`; the
//! sum `f = sum x_i f_i` has maximum `eps1` if some bit is set and `0`
//! otherwise. Any maximizer with error `eps1/4` therefore decides OR, so it
//! inherits the `Omega(sqrt(n))` query lower bound for OR on `n` bits.

use rand::Rng;

use crate::holder::{BumpFamily, ClassParams, HolderFunction, MultiIndex};
use crate::maximizer::{quantum_maximize, MaximizerParams};
use crate::qcore::QueryLedger;
use crate::search::SearchParams;
use crate::{Error, Result};

/// `f = sum_i x_i f_i` over a bump family.
#[derive(Debug, Clone)]
pub struct BitEmbedding {
    family: BumpFamily,
    bits: Vec<bool>,
}

impl BitEmbedding {
    pub fn new(family: BumpFamily, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != family.n_bumps() {
            return Err(Error::BitLength {
                got: bits.len(),
                expected: family.n_bumps(),
            });
        }
        Ok(Self { family, bits })
    }

    pub fn family(&self) -> &BumpFamily {
        &self.family
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn any(&self) -> bool {
        self.bits.iter().any(|&b| b)
    }
}

impl HolderFunction for BitEmbedding {
    fn class(&self) -> ClassParams {
        self.family.class()
    }

    /// Supports are disjoint and each lies in its own cell, so only the bump
    /// of the cell containing `t` can be nonzero there.
    fn partial(&self, alpha: &MultiIndex, t: &[f64]) -> f64 {
        match self.family.covering(t) {
            Some(i) if self.bits[i] => self.family.bump_partial(i, alpha, t),
            _ => 0.0,
        }
    }

    fn sup_bound(&self) -> f64 {
        if self.any() {
            self.family.height()
        } else {
            0.0
        }
    }

    fn seminorm_bound(&self) -> f64 {
        self.family.member_seminorm()
    }

    fn known_max(&self) -> Option<f64> {
        Some(self.sup_bound())
    }
}

pub fn embed_bits(bits: &[bool], family: BumpFamily) -> Result<BitEmbedding> {
    BitEmbedding::new(family, bits.to_vec())
}

/// Decision rule on a maximizer output `a`: 1 iff `3/4 eps1 <= a <= 5/4 eps1`.
/// The band `[-eps1/4, eps1/4]` and every other value map to 0.
pub fn decide_or(a: f64, eps1: f64) -> bool {
    (0.75 * eps1..=1.25 * eps1).contains(&a)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrOutcome {
    pub bit: bool,
    pub maximizer_value: f64,
    /// Subdivisions per edge used by the maximizer.
    pub n_grid: usize,
    pub ledger: QueryLedger,
}

/// Settings of the reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionParams {
    pub class: ClassParams,
    /// The maximizer runs with target error `eps1 / accuracy_divisor`.
    pub accuracy_divisor: f64,
    pub search: SearchParams,
}

impl ReductionParams {
    pub fn new(class: ClassParams) -> Self {
        Self {
            class,
            accuracy_divisor: 4.0,
            search: SearchParams::default(),
        }
    }
}

/// Largest bump height usable for `n` bits.
pub fn max_eps1(n: usize, class: ClassParams) -> f64 {
    BumpFamily::max_height(n, class)
}

/// Computes OR(bits) by maximizing the embedded function to error `eps1/4`.
pub fn or_via_maximizer<R: Rng + ?Sized>(
    bits: &[bool],
    eps1: f64,
    params: &ReductionParams,
    rng: &mut R,
) -> Result<OrOutcome> {
    let family = BumpFamily::new(bits.len(), params.class, eps1)?;
    let f = embed_bits(bits, family)?;
    let mut mp = MaximizerParams::new(eps1 / params.accuracy_divisor);
    mp.search = params.search;
    let res = quantum_maximize(&f, &mp, rng)?;
    Ok(OrOutcome {
        bit: decide_or(res.value, eps1),
        maximizer_value: res.value,
        n_grid: res.n,
        ledger: res.ledger,
    })
}
