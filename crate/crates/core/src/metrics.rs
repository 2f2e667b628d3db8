//! Estimation accuracy metrics over (actual, estimated) effort pairs.
//!
//! All functions take pairs ordered `(actual, estimated)` in person-hours.
//! Relative-error metrics follow the standard definitions: MMRE averages
//! `|actual − estimated| / actual`, MMER averages the same magnitude
//! relative to the estimate, and PRED(x) is the share of pairs whose
//! relative error stays within x percent. Mean error uses the signed
//! convention `estimated − actual`, so positive means overestimation; the
//! confidence interval margin uses Student's t for correctness at small n.

use thiserror::Error;

use crate::stats::t_quantile;

/// All accuracy criteria for one estimator over one dataset.
///
/// PRED percentages are monotone: `pred25 <= pred50 <= pred75 <= pred100`,
/// and every percentage lies in `[0, 100]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationReport {
    pub n: usize,
    pub mmre: f64,
    pub mmer: f64,
    pub pred25: f64,
    pub pred50: f64,
    pub pred75: f64,
    pub pred100: f64,
    /// Signed mean of `estimated − actual`, in person-hours.
    pub mean_error: f64,
    /// Half-width of the 95% confidence interval on the mean error.
    pub ci_margin: f64,
}

impl EvaluationReport {
    /// PRED thresholds and values in ascending threshold order.
    pub fn pred_levels(&self) -> [(u32, f64); 4] {
        [
            (25, self.pred25),
            (50, self.pred50),
            (75, self.pred75),
            (100, self.pred100),
        ]
    }
}

fn check_nonempty(pairs: &[(f64, f64)]) -> Result<(), MetricsError> {
    if pairs.is_empty() {
        Err(MetricsError::EmptyDataset)
    } else {
        Ok(())
    }
}

fn check_actuals_positive(pairs: &[(f64, f64)]) -> Result<(), MetricsError> {
    for (index, &(actual, _)) in pairs.iter().enumerate() {
        if !(actual > 0.0) {
            return Err(MetricsError::NonPositiveActual {
                index,
                value: actual,
            });
        }
    }
    Ok(())
}

/// Mean magnitude of relative error: mean of `|actual − estimated| / actual`.
pub fn mmre(pairs: &[(f64, f64)]) -> Result<f64, MetricsError> {
    check_nonempty(pairs)?;
    check_actuals_positive(pairs)?;
    let sum: f64 = pairs
        .iter()
        .map(|&(actual, estimated)| (actual - estimated).abs() / actual)
        .sum();
    Ok(sum / pairs.len() as f64)
}

/// Mean magnitude of error relative to the estimate: mean of
/// `|actual − estimated| / estimated`.
pub fn mmer(pairs: &[(f64, f64)]) -> Result<f64, MetricsError> {
    check_nonempty(pairs)?;
    for (index, &(_, estimated)) in pairs.iter().enumerate() {
        if !(estimated > 0.0) {
            return Err(MetricsError::NonPositiveEstimate {
                index,
                value: estimated,
            });
        }
    }
    let sum: f64 = pairs
        .iter()
        .map(|&(actual, estimated)| (actual - estimated).abs() / estimated)
        .sum();
    Ok(sum / pairs.len() as f64)
}

/// Prediction level: the percentage of pairs whose relative error is at
/// most `x` percent. `pred(pairs, 25.0)` is the usual PRED(25).
pub fn pred(pairs: &[(f64, f64)], x: f64) -> Result<f64, MetricsError> {
    check_nonempty(pairs)?;
    check_actuals_positive(pairs)?;
    let threshold = x / 100.0;
    let hits = pairs
        .iter()
        .filter(|&&(actual, estimated)| (actual - estimated).abs() / actual <= threshold)
        .count();
    Ok(100.0 * hits as f64 / pairs.len() as f64)
}

/// Signed mean error `estimated − actual` with its confidence interval
/// half-width at the given level (0.95 for the usual 95% interval).
///
/// The margin is `t(1 − (1 − level)/2, n − 1) × s / sqrt(n)` with the
/// sample standard deviation `s` (n − 1 denominator). Needs `n >= 2`.
pub fn mean_error_ci(pairs: &[(f64, f64)], level: f64) -> Result<(f64, f64), MetricsError> {
    if pairs.len() < 2 {
        return Err(MetricsError::InsufficientData { n: pairs.len() });
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(MetricsError::InvalidConfidenceLevel(level));
    }
    let n = pairs.len() as f64;
    let errors: Vec<f64> = pairs
        .iter()
        .map(|&(actual, estimated)| estimated - actual)
        .collect();
    let mean = errors.iter().sum::<f64>() / n;
    let variance = errors.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let stddev = variance.sqrt();
    let p = 1.0 - (1.0 - level) / 2.0;
    let t = t_quantile(p, pairs.len() as u32 - 1).expect("valid level and dof");
    Ok((mean, t * stddev / n.sqrt()))
}

/// Computes the full report: MMRE, MMER, the four PRED levels, and the
/// mean error with 95% confidence margin.
///
/// Requires at least two pairs, positive actuals, and positive estimates.
pub fn evaluate(pairs: &[(f64, f64)]) -> Result<EvaluationReport, MetricsError> {
    let (mean_error, ci_margin) = mean_error_ci(pairs, 0.95)?;
    Ok(EvaluationReport {
        n: pairs.len(),
        mmre: mmre(pairs)?,
        mmer: mmer(pairs)?,
        pred25: pred(pairs, 25.0)?,
        pred50: pred(pairs, 50.0)?,
        pred75: pred(pairs, 75.0)?,
        pred100: pred(pairs, 100.0)?,
        mean_error,
        ci_margin,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MetricsError {
    #[error("metrics need at least one (actual, estimated) pair")]
    EmptyDataset,
    #[error("actual effort must be positive, got {value} at pair {index}")]
    NonPositiveActual { index: usize, value: f64 },
    #[error("estimated effort must be positive, got {value} at pair {index}")]
    NonPositiveEstimate { index: usize, value: f64 },
    #[error("confidence interval needs at least 2 pairs, got {n}")]
    InsufficientData { n: usize },
    #[error("confidence level must lie strictly between 0 and 1, got {0}")]
    InvalidConfidenceLevel(f64),
}
