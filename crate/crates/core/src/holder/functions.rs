//! Registered test functions with analytic derivatives and known maxima.

use std::f64::consts::PI;

use super::{BumpFamily, ClassParams, HolderFunction, MultiIndex};
use crate::reduction::BitEmbedding;
use crate::{Error, Result};

/// `f = value` everywhere.
#[derive(Debug, Clone, Copy)]
pub struct Constant {
    class: ClassParams,
    value: f64,
}

impl Constant {
    pub fn new(class: ClassParams, value: f64) -> Self {
        Self { class, value }
    }
}

impl HolderFunction for Constant {
    fn class(&self) -> ClassParams {
        self.class
    }

    fn partial(&self, alpha: &MultiIndex, _t: &[f64]) -> f64 {
        if alpha.order() == 0 {
            self.value
        } else {
            0.0
        }
    }

    fn sup_bound(&self) -> f64 {
        self.value.abs()
    }

    fn seminorm_bound(&self) -> f64 {
        0.0
    }

    fn known_max(&self) -> Option<f64> {
        Some(self.value)
    }
}

/// `f(t) = sin(2 pi t) / (2 pi)` on `[0,1]`, maximum `1/(2 pi)` at `t = 1/4`.
///
/// For `r >= 1` the order-`r` seminorm is `(2 pi)^r`, so this sits outside the
/// unit class; it is kept as a smooth reference with a known maximum.
#[derive(Debug, Clone, Copy)]
pub struct Sin1d {
    class: ClassParams,
}

impl Sin1d {
    pub fn new(r: u32, rho: f64) -> Result<Self> {
        Ok(Self {
            class: ClassParams::new(1, r, rho)?,
        })
    }
}

impl HolderFunction for Sin1d {
    fn class(&self) -> ClassParams {
        self.class
    }

    fn partial(&self, alpha: &MultiIndex, t: &[f64]) -> f64 {
        let k = alpha.order();
        let w = 2.0 * PI;
        w.powi(k as i32 - 1) * (w * t[0] + f64::from(k) * PI / 2.0).sin()
    }

    fn sup_bound(&self) -> f64 {
        1.0 / (2.0 * PI)
    }

    fn seminorm_bound(&self) -> f64 {
        (2.0 * PI).powi(self.class.r as i32)
    }

    fn known_max(&self) -> Option<f64> {
        Some(1.0 / (2.0 * PI))
    }
}

/// `f(t) = A prod_k cos(2 pi (t_k - 1/2))` with `A = 1 / (d (2 pi)^(r+1))`,
/// maximum `A` at the center of the cube.
#[derive(Debug, Clone, Copy)]
pub struct CosProd {
    class: ClassParams,
    amplitude: f64,
}

impl CosProd {
    pub fn new(class: ClassParams) -> Result<Self> {
        class.validate()?;
        let amplitude = 1.0 / (class.d as f64 * (2.0 * PI).powi(class.r as i32 + 1));
        Ok(Self { class, amplitude })
    }
}

impl HolderFunction for CosProd {
    fn class(&self) -> ClassParams {
        self.class
    }

    fn partial(&self, alpha: &MultiIndex, t: &[f64]) -> f64 {
        let w = 2.0 * PI;
        self.amplitude
            * t.iter()
                .zip(alpha.exponents())
                .map(|(&x, &k)| w.powi(k as i32) * (w * (x - 0.5) + f64::from(k) * PI / 2.0).cos())
                .product::<f64>()
    }

    fn sup_bound(&self) -> f64 {
        self.amplitude
    }

    fn seminorm_bound(&self) -> f64 {
        1.0
    }

    fn known_max(&self) -> Option<f64> {
        Some(self.amplitude)
    }
}

/// Anchor of [`PowerCusp`]; a grid vertex for every `n` divisible by 4.
pub const CUSP_ANCHOR: f64 = 0.25;

/// `f(t) = 1/2 - c sum_k |t_k - 1/4|^(r+rho)`, maximum `1/2` at `(1/4, ..., 1/4)`.
///
/// `c` puts the order-`r` seminorm at most 1. The function is self-similar
/// about its anchor, and the anchor is a cube vertex on dyadic grids, so the
/// local-model error at the maximum is an exact power of `1/n`.
#[derive(Debug, Clone, Copy)]
pub struct PowerCusp {
    class: ClassParams,
    scale: f64,
}

impl PowerCusp {
    pub fn new(class: ClassParams) -> Result<Self> {
        class.validate()?;
        let p = class.smoothness();
        let falling: f64 = (0..class.r).map(|i| p - f64::from(i)).product();
        // Hölder constant of |x|^rho sgn(x)^r.
        let sign_factor = if class.r % 2 == 1 {
            2f64.powf(1.0 - class.rho)
        } else {
            1.0
        };
        let spread = (class.d as f64 / 2.0).max(1.0);
        Ok(Self {
            class,
            scale: 1.0 / (falling * sign_factor * spread),
        })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

impl HolderFunction for PowerCusp {
    fn class(&self) -> ClassParams {
        self.class
    }

    fn partial(&self, alpha: &MultiIndex, t: &[f64]) -> f64 {
        let p = self.class.smoothness();
        let mut support = alpha.support();
        match (support.next(), support.next()) {
            (None, _) => {
                0.5 - self.scale
                    * t.iter()
                        .map(|x| (x - CUSP_ANCHOR).abs().powf(p))
                        .sum::<f64>()
            }
            (Some((j, k)), None) => {
                let x = t[j] - CUSP_ANCHOR;
                if x == 0.0 {
                    return 0.0;
                }
                let falling: f64 = (0..k).map(|i| p - f64::from(i)).product();
                let sign = if k % 2 == 1 { x.signum() } else { 1.0 };
                -self.scale * falling * x.abs().powf(p - f64::from(k)) * sign
            }
            // Mixed partials of a separable sum vanish.
            _ => 0.0,
        }
    }

    fn sup_bound(&self) -> f64 {
        let worst = 0.5
            - self.scale * self.class.d as f64 * (1.0 - CUSP_ANCHOR).powf(self.class.smoothness());
        worst.abs().max(0.5)
    }

    fn seminorm_bound(&self) -> f64 {
        1.0
    }

    fn known_max(&self) -> Option<f64> {
        Some(0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionInfo {
    pub name: &'static str,
    pub dims: &'static str,
    pub description: &'static str,
}

const REGISTRY: &[FunctionInfo] = &[
    FunctionInfo {
        name: "constant",
        dims: "any",
        description: "f = 0.5; max 0.5",
    },
    FunctionInfo {
        name: "sin1d",
        dims: "1",
        description: "sin(2 pi t)/(2 pi); max 1/(2 pi) at t = 0.25",
    },
    FunctionInfo {
        name: "cosprod",
        dims: "any",
        description: "prod cos(2 pi (t_k - 0.5)) / (d (2 pi)^(r+1)); max at the cube center",
    },
    FunctionInfo {
        name: "powercusp",
        dims: "any",
        description: "0.5 - c sum |t_k - 0.25|^(r+rho); max 0.5, worst case for dyadic grids",
    },
    FunctionInfo {
        name: "bumpfamily",
        dims: "any",
        description: "sum of calibrated disjoint bumps (4 cells, bit 2 set); max = bump height",
    },
];

pub fn registered_functions() -> &'static [FunctionInfo] {
    REGISTRY
}

/// Instantiates a registered function for the given class.
pub fn make_function(name: &str, class: ClassParams) -> Result<Box<dyn HolderFunction>> {
    class.validate()?;
    Ok(match name {
        "constant" => Box::new(Constant::new(class, 0.5)),
        "sin1d" => {
            if class.d != 1 {
                return Err(Error::InvalidParameter("sin1d requires d = 1".into()));
            }
            Box::new(Sin1d::new(class.r, class.rho)?)
        }
        "cosprod" => Box::new(CosProd::new(class)?),
        "powercusp" => Box::new(PowerCusp::new(class)?),
        "bumpfamily" => {
            let family = BumpFamily::new(4, class, BumpFamily::max_height(4, class))?;
            Box::new(BitEmbedding::new(family, vec![false, false, true, false])?)
        }
        other => return Err(Error::UnknownFunction(other.to_string())),
    })
}
