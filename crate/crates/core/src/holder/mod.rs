//! Hölder classes `F^{r,rho}_d`, subdivision grids, Taylor local models and
//! the disjoint-support bump family.
//!
//! Points use the max-norm throughout and function bounds are sup-norms. A
//! class member has `sup |f| <= 1` and every order-`r` partial derivative
//! satisfies `|D^a f(x) - D^a f(y)| <= |x - y|_inf^rho`.

mod bump;
mod checks;
mod functions;
mod grid;
mod multi_index;
mod taylor;

pub use bump::{BumpFamily, BumpMember, BumpProfile};
pub use checks::{membership_check, membership_check_in, remainder_bound_check, Membership};
pub use functions::{
    make_function, registered_functions, Constant, CosProd, FunctionInfo, PowerCusp, Sin1d,
};
pub use grid::{build_grid, Grid, DEFAULT_GRID_CAP};
pub use multi_index::{
    binomial, factorial, multi_indices_of_order, multi_indices_up_to, taylor_coefficient_count,
    MultiIndex,
};
pub use taylor::{eval_taylor, taylor_model, TaylorModel};

use crate::{Error, Result};

/// Class parameters `(d, r, rho)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassParams {
    pub d: usize,
    pub r: u32,
    pub rho: f64,
}

impl ClassParams {
    pub fn new(d: usize, r: u32, rho: f64) -> Result<Self> {
        let p = Self { d, r, rho };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidParameter("dimension d must be >= 1".into()));
        }
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "rho must lie in (0, 1], got {}",
                self.rho
            )));
        }
        Ok(())
    }

    /// `r + rho`.
    pub fn smoothness(&self) -> f64 {
        f64::from(self.r) + self.rho
    }

    /// Values consumed by one Taylor model: `(d+r)! / (d! r!)`.
    pub fn coefficient_count(&self) -> u64 {
        taylor_coefficient_count(self.d, self.r)
    }

    /// Remainder constant `d^r / r!`: summing `|s^a| / a!` over `|a| = r`
    /// with `|s|_inf <= 1` gives exactly this.
    pub fn default_h_conf(&self) -> f64 {
        (self.d as f64).powi(self.r as i32) / factorial(self.r).max(1.0)
    }
}

/// A function on `[0,1]^d` with partial derivatives up to order `r`.
pub trait HolderFunction: Send + Sync {
    fn class(&self) -> ClassParams;

    /// `D^alpha f(t)`. Callers guarantee `|alpha| <= r` and `t.len() == d`;
    /// use [`derivative`] for the checked form.
    fn partial(&self, alpha: &MultiIndex, t: &[f64]) -> f64;

    /// Declared bound on `sup |f|`.
    fn sup_bound(&self) -> f64;

    /// Declared bound on the order-`r` Hölder seminorm.
    fn seminorm_bound(&self) -> f64;

    /// Ground-truth maximum over `[0,1]^d`, when known.
    fn known_max(&self) -> Option<f64> {
        None
    }

    fn value(&self, t: &[f64]) -> f64 {
        self.partial(&MultiIndex::zero(t.len()), t)
    }
}

/// Checked `D^alpha f(t)`.
pub fn derivative(f: &dyn HolderFunction, alpha: &MultiIndex, t: &[f64]) -> Result<f64> {
    let class = f.class();
    if t.len() != class.d {
        return Err(Error::PointDimension {
            got: t.len(),
            expected: class.d,
        });
    }
    if alpha.dim() != class.d {
        return Err(Error::PointDimension {
            got: alpha.dim(),
            expected: class.d,
        });
    }
    if alpha.order() > class.r {
        return Err(Error::DerivativeOrder {
            order: alpha.order(),
            r: class.r,
        });
    }
    Ok(f.partial(alpha, t))
}
