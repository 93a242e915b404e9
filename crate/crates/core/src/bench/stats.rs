use crate::{Error, Result};

/// Empirical error at confidence `1 - theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorQuantile {
    pub theta: f64,
    /// Smallest sample error `e` such that the fraction of samples with
    /// error strictly above `e` is at most `theta`.
    pub epsilon_hat: f64,
}

pub fn estimate_error_quantile(errors: &[f64], theta: f64) -> Result<ErrorQuantile> {
    if errors.is_empty() {
        return Err(Error::EmptySample);
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "theta must lie in (0, 1), got {theta}"
        )));
    }
    let mut sorted: Vec<f64> = errors.iter().map(|e| e.abs()).collect();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let allowed = theta * n as f64;
    // Walk up the order statistics; the count above sorted[i] is the number
    // of entries after its last tie.
    let mut i = 0;
    loop {
        let v = sorted[i];
        let mut last = i;
        while last + 1 < n && sorted[last + 1] == v {
            last += 1;
        }
        let above = n - 1 - last;
        if above as f64 <= allowed {
            return Ok(ErrorQuantile {
                theta,
                epsilon_hat: v,
            });
        }
        i = last + 1;
    }
}

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    /// Natural-log intercept: `y ~ exp(intercept) x^slope`.
    pub intercept: f64,
    pub r2: f64,
}

pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<LogLogFit> {
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(Error::NonPositive { x, y });
    }
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if points.len() < 3 || xs.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let m = points.len() as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(LogLogFit {
        slope,
        intercept,
        r2,
    })
}

/// `sqrt(p (1 - p) / trials)`.
pub fn binomial_sigma(p: f64, trials: usize) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use proptest::prelude::*;
    use rand::Rng;

    /// Definition by enumeration: the smallest candidate among the samples
    /// whose exceedance fraction is at most theta.
    fn brute_quantile(errors: &[f64], theta: f64) -> f64 {
        let n = errors.len() as f64;
        errors
            .iter()
            .copied()
            .filter(|&e| errors.iter().filter(|&&x| x > e).count() as f64 / n <= theta)
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn quantile_examples() {
        assert_eq!(
            estimate_error_quantile(&[0.0; 4], 0.25)
                .unwrap()
                .epsilon_hat,
            0.0
        );
        assert_eq!(
            estimate_error_quantile(&[1.0, 2.0, 3.0, 4.0], 0.25)
                .unwrap()
                .epsilon_hat,
            3.0
        );
        assert_eq!(brute_quantile(&[1.0, 2.0, 3.0, 4.0], 0.25), 3.0);
        let mut rng = seeded(1);
        let u: Vec<f64> = (0..1000).map(|_| rng.gen()).collect();
        let q = estimate_error_quantile(&u, 0.25).unwrap().epsilon_hat;
        assert!((q - 0.75).abs() <= 0.05);
        assert_eq!(estimate_error_quantile(&[], 0.25), Err(Error::EmptySample));
        assert!(estimate_error_quantile(&[1.0], 1.0).is_err());
    }

    proptest! {
        #[test]
        fn quantile_matches_enumeration(
            errs in prop::collection::vec(0u32..20, 1..60),
            theta in 0.01f64..0.99,
        ) {
            let errs: Vec<f64> = errs.into_iter().map(f64::from).collect();
            let q = estimate_error_quantile(&errs, theta).unwrap().epsilon_hat;
            prop_assert_eq!(q, brute_quantile(&errs, theta));
        }

        #[test]
        fn power_laws_are_recovered(slope in -3.0f64..3.0, scale in 0.01f64..100.0) {
            let pts: Vec<(f64, f64)> = [1.0, 2.0, 4.0, 8.0, 16.0]
                .iter()
                .map(|&x: &f64| (x, scale * x.powf(slope)))
                .collect();
            let fit = fit_loglog_slope(&pts).unwrap();
            prop_assert!((fit.slope - slope).abs() < 1e-10);
            prop_assert!((fit.intercept - scale.ln()).abs() < 1e-9);
        }
    }

    #[test]
    fn fit_examples() {
        let sq: Vec<(f64, f64)> = [1.0, 2.0, 4.0, 8.0].iter().map(|&x| (x, x * x)).collect();
        let fit = fit_loglog_slope(&sq).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-10);
        assert!((fit.r2 - 1.0).abs() < 1e-12);
        let root: Vec<(f64, f64)> = [1.0, 3.0, 9.0]
            .iter()
            .map(|&x: &f64| (x, 5.0 * x.sqrt()))
            .collect();
        let fit = fit_loglog_slope(&root).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-12 && (fit.intercept - 5f64.ln()).abs() < 1e-12);
        let flat = fit_loglog_slope(&[(1.0, 3.0), (2.0, 3.0), (5.0, 3.0)]).unwrap();
        assert!(flat.slope.abs() < 1e-15);
        assert!(matches!(
            fit_loglog_slope(&[(1.0, 1.0), (0.0, 2.0), (3.0, 1.0)]),
            Err(Error::NonPositive { .. })
        ));
        assert!(fit_loglog_slope(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_loglog_slope(&[(2.0, 1.0), (2.0, 2.0), (2.0, 3.0)]).is_err());
    }
}
