//! Nonlinear size/effort models, least-squares fitting, and the piecewise
//! range-segmented estimator.
//!
//! Four model forms relate size `x` (UCP) to effort `y` (person-hours):
//!
//! | kind       | formula                          | params      |
//! |------------|----------------------------------|-------------|
//! | polynomial | y = a·x² + b·x + c               | (a, b, c)   |
//! | exp1       | y = a + b·e^(c·x)                | (a, b, c)   |
//! | exp2       | y = a·e^(b·x) + c·e^(d·x)        | (a, b, c, d)|
//! | exp3       | y = e^(a + b·x)                  | (a, b)      |
//!
//! Sizes segment into Small (< 100), Medium (100..=300), and Large (> 300)
//! ranges, each fitted with its own best form; see [`piecewise`].

pub mod fit;
pub mod piecewise;

use std::fmt;

use thiserror::Error;

/// The four supported model forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Polynomial,
    Exp1,
    Exp2,
    Exp3,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::Polynomial,
        ModelKind::Exp1,
        ModelKind::Exp2,
        ModelKind::Exp3,
    ];

    /// Number of parameters the form takes.
    pub fn param_count(self) -> usize {
        match self {
            ModelKind::Polynomial => 3,
            ModelKind::Exp1 => 3,
            ModelKind::Exp2 => 4,
            ModelKind::Exp3 => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Polynomial => "polynomial",
            ModelKind::Exp1 => "exp1",
            ModelKind::Exp2 => "exp2",
            ModelKind::Exp3 => "exp3",
        }
    }

    pub fn parse(token: &str) -> Option<Self> {
        match token {
            "polynomial" => Some(ModelKind::Polynomial),
            "exp1" => Some(ModelKind::Exp1),
            "exp2" => Some(ModelKind::Exp2),
            "exp3" => Some(ModelKind::Exp3),
            _ => None,
        }
    }

    /// Human-readable formula template.
    pub fn formula(self) -> &'static str {
        match self {
            ModelKind::Polynomial => "y = a*x^2 + b*x + c",
            ModelKind::Exp1 => "y = a + b*exp(c*x)",
            ModelKind::Exp2 => "y = a*exp(b*x) + c*exp(d*x)",
            ModelKind::Exp3 => "y = exp(a + b*x)",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// A model form with bound parameters.
///
/// The parameter count always matches the kind and every parameter is
/// finite; construction enforces both.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelForm {
    kind: ModelKind,
    params: Vec<f64>,
}

impl ModelForm {
    pub fn new(kind: ModelKind, params: Vec<f64>) -> Result<Self, RegressionError> {
        if params.len() != kind.param_count() {
            return Err(RegressionError::ParamCount {
                kind,
                expected: kind.param_count(),
                got: params.len(),
            });
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(RegressionError::NonFiniteParam { kind });
        }
        Ok(ModelForm { kind, params })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    /// Evaluates the model, failing if the result overflows to non-finite.
    pub fn eval(&self, x: f64) -> Result<f64, RegressionError> {
        let y = self.eval_raw(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(RegressionError::NonFiniteEval {
                kind: self.kind,
                x,
                params: self.params.clone(),
            })
        }
    }

    /// Evaluates without the finiteness check; used inside the solver where
    /// non-finite trial values are handled by rejecting the step.
    pub(crate) fn eval_raw(&self, x: f64) -> f64 {
        eval_kind(self.kind, &self.params, x)
    }
}

pub(crate) fn eval_kind(kind: ModelKind, p: &[f64], x: f64) -> f64 {
    match kind {
        ModelKind::Polynomial => p[0] * x * x + p[1] * x + p[2],
        ModelKind::Exp1 => p[0] + p[1] * (p[2] * x).exp(),
        ModelKind::Exp2 => p[0] * (p[1] * x).exp() + p[2] * (p[3] * x).exp(),
        ModelKind::Exp3 => (p[0] + p[1] * x).exp(),
    }
}

/// Partial derivatives of the model value with respect to each parameter,
/// in parameter order. `p` must have `kind.param_count()` entries;
/// exposed so callers can verify or reuse the solver's derivatives.
pub fn jacobian_row(kind: ModelKind, p: &[f64], x: f64) -> Vec<f64> {
    match kind {
        ModelKind::Polynomial => vec![x * x, x, 1.0],
        ModelKind::Exp1 => {
            let e = (p[2] * x).exp();
            vec![1.0, e, p[1] * x * e]
        }
        ModelKind::Exp2 => {
            let eb = (p[1] * x).exp();
            let ed = (p[3] * x).exp();
            vec![eb, p[0] * x * eb, ed, p[2] * x * ed]
        }
        ModelKind::Exp3 => {
            let e = (p[0] + p[1] * x).exp();
            vec![e, x * e]
        }
    }
}

/// Size ranges of the piecewise estimator. Together they partition
/// `[0, ∞)`: every nonnegative size falls in exactly one range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SizeRange {
    Small,
    Medium,
    Large,
}

impl SizeRange {
    pub const ALL: [SizeRange; 3] = [SizeRange::Small, SizeRange::Medium, SizeRange::Large];

    /// Boundary between Small and Medium; sizes below it are Small.
    pub const SMALL_MEDIUM_BOUNDARY: f64 = 100.0;
    /// Boundary between Medium and Large; sizes above it are Large.
    pub const MEDIUM_LARGE_BOUNDARY: f64 = 300.0;

    pub fn as_str(self) -> &'static str {
        match self {
            SizeRange::Small => "Small",
            SizeRange::Medium => "Medium",
            SizeRange::Large => "Large",
        }
    }

    pub fn parse(token: &str) -> Option<Self> {
        match token.to_ascii_lowercase().as_str() {
            "small" => Some(SizeRange::Small),
            "medium" => Some(SizeRange::Medium),
            "large" => Some(SizeRange::Large),
            _ => None,
        }
    }

    /// Default model form fitted for this range.
    pub fn default_kind(self) -> ModelKind {
        match self {
            SizeRange::Small => ModelKind::Polynomial,
            SizeRange::Medium => ModelKind::Exp3,
            SizeRange::Large => ModelKind::Exp2,
        }
    }
}

impl fmt::Display for SizeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// Assigns a size to its range: Small below 100 UCP, Medium from 100 to
/// 300 inclusive, Large above 300.
pub fn segment(size: f64) -> SizeRange {
    if size < SizeRange::SMALL_MEDIUM_BOUNDARY {
        SizeRange::Small
    } else if size <= SizeRange::MEDIUM_LARGE_BOUNDARY {
        SizeRange::Medium
    } else {
        SizeRange::Large
    }
}

/// Errors across model construction, evaluation, and fitting.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegressionError {
    #[error("{kind} takes {expected} parameters, got {got}")]
    ParamCount {
        kind: ModelKind,
        expected: usize,
        got: usize,
    },
    #[error("{kind} parameters must all be finite")]
    NonFiniteParam { kind: ModelKind },
    #[error("{kind} evaluation overflowed at x = {x} with params {params:?}")]
    NonFiniteEval {
        kind: ModelKind,
        x: f64,
        params: Vec<f64>,
    },
    #[error("{kind} fit needs at least {needed} points, got {got}")]
    InsufficientData {
        kind: ModelKind,
        needed: usize,
        got: usize,
    },
    #[error("size at index {index} is negative ({value})")]
    NegativeSize { index: usize, value: f64 },
    #[error("effort at index {index} is not positive ({value})")]
    NonPositiveEffort { index: usize, value: f64 },
    #[error("normal equations remained singular under damping retries")]
    SingularJacobian,
    #[error("length mismatch: {actual} actual values vs {predicted} predicted")]
    LengthMismatch { actual: usize, predicted: usize },
    #[error("empty data")]
    EmptyData,
    #[error("all actual values are identical; R^2 is undefined")]
    ZeroVariance,
    #[error("{range} range has no data points")]
    EmptyRange { range: SizeRange },
    #[error("{range} range: {source}")]
    Range {
        range: SizeRange,
        source: Box<RegressionError>,
    },
}
