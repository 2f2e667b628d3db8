//! Effort estimation for software projects sized from use-case scenarios.
//!
//! The crate covers the full pipeline:
//!
//! * [`parser`] reads plain-text scenario files into a [`model::ProjectSpec`].
//! * [`sizing`] turns a spec into a transaction-weighted size in use case
//!   points (UCP), alongside the legacy UUCP/UCP counts for comparison.
//! * [`adjustment`] applies team complexity and productivity multipliers.
//! * [`regression`] fits per-size-range nonlinear effort curves with a
//!   Levenberg-Marquardt solver and combines them into a piecewise estimator.
//! * [`metrics`] evaluates estimates against actuals (MMRE, MMER, PRED,
//!   confidence intervals on mean error).
//! * [`dataset`] handles CSV project datasets, estimator JSON files, and
//!   deterministic synthetic dataset generation.

pub mod adjustment;
pub mod dataset;
pub mod metrics;
pub mod model;
pub mod parser;
pub mod regression;
pub mod sizing;
pub mod stats;

pub use adjustment::{AdjustmentFactors, ProductivityRatings, Rating};
pub use dataset::{
    generate_synthetic, load_dataset, load_estimator, save_estimator, write_dataset, DatasetLoad,
    ProjectRecord, SplitMix64,
};
pub use metrics::EvaluationReport;
pub use model::{
    Actor, ActorKind, ComplexityClass, ComplexityLevel, LegacyUseCaseClass, ProjectSpec, UseCase,
    UseCaseKind,
};
pub use parser::{parse_project, serialize_project, ParseOutput};
pub use regression::{
    fit::{fit, FitOptions, FitResult},
    piecewise::{fit_piecewise, PiecewiseEstimator, PiecewiseOptions, Prediction},
    segment, ModelForm, ModelKind, SizeRange,
};
pub use sizing::{proposed_size, SizeBreakdown};
