//! The range-segmented piecewise estimator.
//!
//! Training data is split by [`segment`](super::segment) and each range is
//! fitted with its default form: polynomial for Small, exp3 for Medium,
//! exp2 for Large. Prediction routes a size to its range's curve, clamps
//! negative curve values to zero, then applies the complexity and
//! productivity adjustment. The estimator is deliberately discontinuous at
//! the 100 and 300 UCP boundaries; no blending is applied.

use crate::adjustment::{adjusted_effort, AdjustmentFactors, ProductivityRatings};
use crate::model::ComplexityLevel;

use super::fit::{fit, FitOptions, FitResult};
use super::{segment, ModelKind, RegressionError, SizeRange};

/// Where an estimator came from: the dataset it was fitted on, when, and
/// under which solver tolerances.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub dataset: String,
    pub fitted_at: String,
    pub max_iterations: usize,
    pub step_tolerance: f64,
    pub residual_tolerance: f64,
}

/// Three per-range fits plus provenance. Immutable once fitted.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseEstimator {
    small: FitResult,
    medium: FitResult,
    large: FitResult,
    provenance: Provenance,
}

/// One predicted effort with the intermediate values that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub size: f64,
    pub range: SizeRange,
    /// Curve value before clamping and adjustment.
    pub raw_curve: f64,
    /// True when the curve predicted a negative effort and was clamped.
    pub clamped: bool,
    pub factors: AdjustmentFactors,
    /// Final adjusted effort in person-hours; always nonnegative.
    pub effort: f64,
}

/// Settings for [`fit_piecewise`].
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseOptions {
    pub fit: FitOptions,
    /// Also fit all four forms per range for comparison reporting.
    pub all_forms: bool,
    /// Dataset identifier recorded in provenance.
    pub dataset_id: String,
    /// Timestamp recorded in provenance; passed in by the caller so the
    /// library itself stays clock-free and deterministic.
    pub fitted_at: String,
}

impl PiecewiseOptions {
    pub fn new(dataset_id: impl Into<String>, fitted_at: impl Into<String>) -> Self {
        PiecewiseOptions {
            fit: FitOptions::default(),
            all_forms: false,
            dataset_id: dataset_id.into(),
            fitted_at: fitted_at.into(),
        }
    }
}

/// All four forms fitted to one range, for comparison reporting.
#[derive(Debug, Clone)]
pub struct RangeComparison {
    pub range: SizeRange,
    /// Successful fits, best R² first.
    pub fits: Vec<FitResult>,
    /// Forms that failed to fit, with the reason.
    pub failures: Vec<(ModelKind, RegressionError)>,
}

/// Result of [`fit_piecewise`]: the estimator and, in all-forms mode, the
/// per-range form comparisons.
#[derive(Debug, Clone)]
pub struct PiecewiseFit {
    pub estimator: PiecewiseEstimator,
    pub comparisons: Option<Vec<RangeComparison>>,
}

impl PiecewiseEstimator {
    /// Assembles an estimator from per-range fits, e.g. when loading one
    /// from a file.
    pub fn new(
        small: FitResult,
        medium: FitResult,
        large: FitResult,
        provenance: Provenance,
    ) -> Self {
        PiecewiseEstimator {
            small,
            medium,
            large,
            provenance,
        }
    }

    pub fn fit_for(&self, range: SizeRange) -> &FitResult {
        match range {
            SizeRange::Small => &self.small,
            SizeRange::Medium => &self.medium,
            SizeRange::Large => &self.large,
        }
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Predicts adjusted effort for a project of the given size.
    ///
    /// The size's range selects the curve; negative curve values clamp to
    /// zero (flagged on the result); the clamped value is divided by the
    /// productivity value and finally scaled by the complexity weight.
    /// Deterministic: identical inputs give bit-identical efforts.
    pub fn predict(
        &self,
        size: f64,
        level: ComplexityLevel,
        ratings: &ProductivityRatings,
    ) -> Result<Prediction, RegressionError> {
        let range = segment(size);
        let raw_curve = self.fit_for(range).form.eval(size)?;
        let clamped = raw_curve < 0.0;
        let base = if clamped { 0.0 } else { raw_curve };
        let effort = adjusted_effort(base, level, ratings);
        Ok(Prediction {
            size,
            range,
            raw_curve,
            clamped,
            factors: AdjustmentFactors::derive(level, ratings),
            effort,
        })
    }
}

fn fit_all_forms(
    range: SizeRange,
    data: &[(f64, f64)],
    options: &FitOptions,
) -> RangeComparison {
    let mut fits = Vec::new();
    let mut failures = Vec::new();
    for kind in ModelKind::ALL {
        match fit(kind, data, options) {
            Ok(result) => fits.push(result),
            Err(err) => failures.push((kind, err)),
        }
    }
    fits.sort_by(|a, b| b.r_squared.total_cmp(&a.r_squared));
    RangeComparison {
        range,
        fits,
        failures,
    }
}

/// Fits the piecewise estimator to (size, effort) training data.
///
/// Every range must contain at least as many points as its default form
/// has parameters (3 for Small, 2 for Medium, 4 for Large). Errors name
/// the offending range.
pub fn fit_piecewise(
    data: &[(f64, f64)],
    options: &PiecewiseOptions,
) -> Result<PiecewiseFit, RegressionError> {
    let mut partitions: [Vec<(f64, f64)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for &point in data {
        let slot = match segment(point.0) {
            SizeRange::Small => 0,
            SizeRange::Medium => 1,
            SizeRange::Large => 2,
        };
        partitions[slot].push(point);
    }

    let mut results = Vec::with_capacity(3);
    for (range, points) in SizeRange::ALL.iter().zip(&partitions) {
        if points.is_empty() {
            return Err(RegressionError::EmptyRange { range: *range });
        }
        let result = fit(range.default_kind(), points, &options.fit).map_err(|err| {
            RegressionError::Range {
                range: *range,
                source: Box::new(err),
            }
        })?;
        results.push(result);
    }
    let large = results.pop().expect("three ranges fitted");
    let medium = results.pop().expect("three ranges fitted");
    let small = results.pop().expect("three ranges fitted");

    let comparisons = options.all_forms.then(|| {
        SizeRange::ALL
            .iter()
            .zip(&partitions)
            .map(|(range, points)| fit_all_forms(*range, points, &options.fit))
            .collect()
    });

    let provenance = Provenance {
        dataset: options.dataset_id.clone(),
        fitted_at: options.fitted_at.clone(),
        max_iterations: options.fit.max_iterations,
        step_tolerance: options.fit.step_tolerance,
        residual_tolerance: options.fit.residual_tolerance,
    };
    Ok(PiecewiseFit {
        estimator: PiecewiseEstimator::new(small, medium, large, provenance),
        comparisons,
    })
}
