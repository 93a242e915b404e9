use super::{derivative, multi_indices_up_to, HolderFunction, MultiIndex};
use crate::qcore::QueryLedger;
use crate::{Error, Result};

/// Order-`r` Taylor polynomial of `f` about `center`:
/// `w(t) = sum_{|a| <= r} D^a f(center) / a! * (t - center)^a`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorModel {
    center: Vec<f64>,
    r: u32,
    terms: Vec<(MultiIndex, f64)>,
}

impl TaylorModel {
    /// Model from explicit coefficients of the offset powers `(t - center)^a`.
    pub fn from_terms(center: Vec<f64>, terms: Vec<(MultiIndex, f64)>) -> Result<Self> {
        let d = center.len();
        if let Some((a, _)) = terms.iter().find(|(a, _)| a.dim() != d) {
            return Err(Error::PointDimension {
                got: a.dim(),
                expected: d,
            });
        }
        let r = terms.iter().map(|(a, _)| a.order()).max().unwrap_or(0);
        Ok(Self { center, r, terms })
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Highest order present.
    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn terms(&self) -> &[(MultiIndex, f64)] {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Option<f64> {
        self.terms.iter().find(|(a, _)| a == alpha).map(|(_, c)| *c)
    }

    /// Constant term `f(center)`.
    pub fn constant(&self) -> f64 {
        self.terms
            .iter()
            .find(|(a, _)| a.order() == 0)
            .map_or(0.0, |(_, c)| *c)
    }

    /// Polynomial value at offset `s = t - center`.
    pub fn eval_offset(&self, s: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(a, c)| {
                c * a
                    .support()
                    .map(|(k, e)| s[k].powi(e as i32))
                    .product::<f64>()
            })
            .sum()
    }

    pub fn eval(&self, t: &[f64]) -> f64 {
        let s: Vec<f64> = t.iter().zip(&self.center).map(|(x, c)| x - c).collect();
        self.eval_offset(&s)
    }
}

/// Builds the Taylor model of `f` at `center`, charging `(d+r)!/(d! r!)`
/// evaluations to `ledger`.
pub fn taylor_model(
    f: &dyn HolderFunction,
    center: &[f64],
    ledger: &mut QueryLedger,
) -> Result<TaylorModel> {
    let class = f.class();
    if center.iter().any(|x| !(0.0..=1.0).contains(x)) {
        return Err(Error::InvalidParameter(format!(
            "center {center:?} outside the unit cube"
        )));
    }
    let terms = multi_indices_up_to(class.d, class.r)
        .into_iter()
        .map(|a| {
            let v = derivative(f, &a, center)?;
            let c = v / a.factorial();
            Ok((a, c))
        })
        .collect::<Result<Vec<_>>>()?;
    ledger.charge_evaluations(terms.len() as u64);
    Ok(TaylorModel {
        center: center.to_vec(),
        r: class.r,
        terms,
    })
}

pub fn eval_taylor(model: &TaylorModel, t: &[f64]) -> f64 {
    model.eval(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holder::{ClassParams, Constant, Sin1d};
    use crate::rng::seeded;
    use rand::Rng;
    use std::f64::consts::PI;

    /// Dense polynomial `sum c_a t^a` of total degree <= deg, with exact derivatives.
    struct Poly {
        class: ClassParams,
        terms: Vec<(MultiIndex, f64)>,
    }

    impl HolderFunction for Poly {
        fn class(&self) -> ClassParams {
            self.class
        }
        fn partial(&self, alpha: &MultiIndex, t: &[f64]) -> f64 {
            self.terms
                .iter()
                .map(|(a, c)| {
                    let mut v = *c;
                    for (k, x) in t.iter().enumerate() {
                        let (e, q) = (a.exponents()[k], alpha.exponents()[k]);
                        if q > e {
                            return 0.0;
                        }
                        let falling: f64 = (0..q).map(|i| f64::from(e - i)).product();
                        v *= falling * x.powi((e - q) as i32);
                    }
                    v
                })
                .sum()
        }
        fn sup_bound(&self) -> f64 {
            self.terms.iter().map(|(_, c)| c.abs()).sum()
        }
        fn seminorm_bound(&self) -> f64 {
            0.0
        }
    }

    #[test]
    fn coefficient_counts() {
        let mut ledger = QueryLedger::new();
        for (d, r, count) in [(2, 2, 6), (1, 0, 1), (3, 2, 10)] {
            let f = Constant::new(ClassParams::new(d, r, 1.0).unwrap(), 0.3);
            let m = taylor_model(&f, &vec![0.5; d], &mut ledger).unwrap();
            assert_eq!(m.terms().len(), count);
        }
        assert_eq!(ledger.evaluations, 17);
        let f = Constant::new(ClassParams::new(1, 0, 1.0).unwrap(), 0.3);
        let m = taylor_model(&f, &[0.2], &mut ledger).unwrap();
        assert_eq!(m.constant(), 0.3);
        assert_eq!(eval_taylor(&m, &[0.2]), 0.3);
    }

    #[test]
    fn polynomials_of_degree_at_most_r_are_reproduced() {
        let mut rng = seeded(21);
        for (d, r) in [(1, 3), (2, 2), (3, 2), (2, 4)] {
            let terms: Vec<(MultiIndex, f64)> = multi_indices_up_to(d, r)
                .into_iter()
                .map(|a| (a, rng.gen_range(-1.0..1.0)))
                .collect();
            let f = Poly {
                class: ClassParams::new(d, r, 1.0).unwrap(),
                terms,
            };
            let center: Vec<f64> = (0..d).map(|_| rng.gen()).collect();
            let m = taylor_model(&f, &center, &mut QueryLedger::new()).unwrap();
            for _ in 0..100 {
                let t: Vec<f64> = (0..d).map(|_| rng.gen()).collect();
                assert!((m.eval(&t) - f.value(&t)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn sine_second_order_model() {
        let f = Sin1d::new(2, 1.0).unwrap();
        let m = taylor_model(&f, &[0.5], &mut QueryLedger::new()).unwrap();
        // Analytic derivatives of sin(2 pi t) / (2 pi) at t = 0.5.
        let a = 2.0 * PI;
        let (f0, f1, f2) = ((a * 0.5).sin() / a, (a * 0.5).cos(), -a * (a * 0.5).sin());
        let expected = f0 + f1 * 0.1 + f2 / 2.0 * 0.01;
        assert!((m.eval(&[0.6]) - expected).abs() < 1e-12);
    }

    #[test]
    fn center_outside_cube_is_rejected() {
        let f = Constant::new(ClassParams::new(1, 0, 1.0).unwrap(), 0.0);
        assert!(taylor_model(&f, &[1.5], &mut QueryLedger::new()).is_err());
    }
}
