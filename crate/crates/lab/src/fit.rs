//! Least-squares power-law fits on log-log axes.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{config, Result};

/// `log₂ y ≈ slope · log₂ n + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    /// Fitted exponent.
    pub slope: f64,
    /// Fitted `log₂` of the leading constant.
    pub intercept: f64,
    /// Coefficient of determination; 1 when the points lie on a line
    /// (including the degenerate flat case).
    pub r_squared: f64,
    /// Standard error of the slope.
    pub slope_stderr: f64,
    /// Two-sided 95% confidence interval for the slope.
    pub slope_ci95: (f64, f64),
}

/// Ordinary least squares on `(log₂ n, log₂ value)`.
///
/// Needs at least three points, all coordinates strictly positive.
pub fn fit_exponent(points: &[(f64, f64)]) -> Result<ExponentFit> {
    if points.len() < 3 {
        return Err(config("exponent fit needs at least 3 points"));
    }
    if let Some(&(n, y)) = points.iter().find(|&&(n, y)| !(n > 0.0 && y > 0.0 && n.is_finite() && y.is_finite())) {
        return Err(config(format!("exponent fit needs positive finite points, got ({n}, {y})")));
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| n.log2()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, y)| y.log2()).collect();
    let k = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / k;
    let mean_y = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(config("exponent fit needs at least two distinct n"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    let dof = k - 2.0;
    let slope_stderr = (ss_res / dof / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, dof).expect("dof >= 1").inverse_cdf(0.975);
    Ok(ExponentFit {
        slope,
        intercept,
        r_squared,
        slope_stderr,
        slope_ci95: (slope - t * slope_stderr, slope + t * slope_stderr),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = [16.0, 64.0, 256.0, 1024.0].iter().map(|&n: &f64| (n, 4.0 * n.powf(1.5))).collect();
        let fit = fit_exponent(&pts).unwrap();
        assert!((fit.slope - 1.5).abs() < 1e-12);
        assert!((fit.intercept - 2.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert!(fit.slope_stderr < 1e-9);
    }

    #[test]
    fn constant_series() {
        let fit = fit_exponent(&[(2.0, 7.0), (4.0, 7.0), (8.0, 7.0)]).unwrap();
        assert_eq!(fit.slope, 0.0);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn noisy_fit_has_interval() {
        let fit = fit_exponent(&[(2.0, 4.5), (4.0, 15.0), (8.0, 70.0), (16.0, 250.0)]).unwrap();
        assert!(fit.slope_ci95.0 < fit.slope && fit.slope < fit.slope_ci95.1);
        assert!(fit.r_squared < 1.0 && fit.r_squared > 0.9);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_exponent(&[(2.0, 1.0), (4.0, 2.0)]).is_err());
        assert!(fit_exponent(&[(2.0, 1.0), (4.0, 0.0), (8.0, 3.0)]).is_err());
        assert!(fit_exponent(&[(2.0, 1.0), (-4.0, 2.0), (8.0, 3.0)]).is_err());
        assert!(fit_exponent(&[(2.0, 1.0), (2.0, 2.0), (2.0, 3.0)]).is_err());
    }
}
