//! Comparison statistics: average percentage difference and the one-tailed
//! paired Student's t-test.

use statrs::distribution::{ContinuousCDF, StudentsT};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("input lists must be nonempty and of equal length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("baseline value at index {0} is not positive")]
    NonpositiveBaseline(usize),
    #[error("paired test needs at least two samples, got {0}")]
    TooFewSamples(usize),
}

/// Mean of the per-entry percentage differences of `candidate` relative to
/// `baseline`: `mean(100 * (candidate_i - baseline_i) / baseline_i)`.
/// Negative means the candidate is lower (better, for costs and times).
pub fn apd(baseline: &[f64], candidate: &[f64]) -> Result<f64, StatsError> {
    if baseline.is_empty() || baseline.len() != candidate.len() {
        return Err(StatsError::LengthMismatch(baseline.len(), candidate.len()));
    }
    if let Some(i) = baseline.iter().position(|&b| b <= 0.0) {
        return Err(StatsError::NonpositiveBaseline(i));
    }
    let sum: f64 = baseline
        .iter()
        .zip(candidate)
        .map(|(&b, &c)| 100.0 * (c - b) / b)
        .sum();
    Ok(sum / baseline.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTestResult {
    pub t: f64,
    /// Whether the one-tailed test rejects "mean difference <= 0".
    pub significant: bool,
    /// Set when the differences have zero variance, where t is either
    /// undefined (all-zero differences) or unbounded.
    pub degenerate: bool,
}

/// One-tailed paired Student's t-test on `d = a - b`, testing whether the
/// mean of `d` is greater than zero at significance level `alpha`.
///
/// Uses the sample standard deviation (n-1 denominator); the critical value
/// is the (1 - alpha) quantile of the t distribution with n - 1 degrees of
/// freedom. Zero-variance differences are flagged degenerate: significant
/// when the common difference is positive, not significant otherwise.
pub fn paired_t_test(a: &[f64], b: &[f64], alpha: f64) -> Result<TTestResult, StatsError> {
    if a.len() != b.len() {
        return Err(StatsError::LengthMismatch(a.len(), b.len()));
    }
    let n = a.len();
    if n < 2 {
        return Err(StatsError::TooFewSamples(n));
    }
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must be in (0, 1)");

    let d: Vec<f64> = a.iter().zip(b).map(|(&x, &y)| x - y).collect();
    let mean = d.iter().sum::<f64>() / n as f64;
    let var = d.iter().map(|&x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    if var == 0.0 {
        return Ok(TTestResult {
            t: if mean > 0.0 { f64::INFINITY } else { f64::NAN },
            significant: mean > 0.0,
            degenerate: true,
        });
    }
    let t = mean / (var.sqrt() / (n as f64).sqrt());
    let dist = StudentsT::new(0.0, 1.0, (n - 1) as f64).expect("valid dof");
    let critical = dist.inverse_cdf(1.0 - alpha);
    Ok(TTestResult { t, significant: t > critical, degenerate: false })
}
