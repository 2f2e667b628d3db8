//! Nonlinear least-squares fitting of the model forms.
//!
//! The solver is damped Gauss-Newton (Levenberg-Marquardt) with analytic
//! Jacobians. Steps solve `(JᵀJ + λI)δ = −Jᵀr`; a step is accepted only if
//! it does not increase the residual sum of squares, so the final residual
//! norm never exceeds the residual norm at initialization. Damping starts
//! at 1e-3, grows tenfold on rejection, and shrinks tenfold on acceptance.
//!
//! Initialization is deterministic per kind: polynomial and exp3 are
//! solved in closed form (normal equations, the latter on `(x, ln y)`),
//! exp1 estimates its rate from the log-slope of detrended data, and exp2
//! runs five deterministic starts derived from the exp3 solution, keeping
//! the lowest final residual.

use nalgebra::{DMatrix, DVector};

use super::{eval_kind, jacobian_row, ModelForm, ModelKind, RegressionError};

/// Solver settings. The defaults are the supported configuration; they are
/// exposed mainly so tests can tighten the iteration budget.
#[derive(Debug, Clone, PartialEq)]
pub struct FitOptions {
    pub max_iterations: usize,
    pub initial_damping: f64,
    /// Convergence threshold on the largest relative parameter step.
    pub step_tolerance: f64,
    /// Convergence threshold on the relative residual decrease.
    pub residual_tolerance: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            max_iterations: 200,
            initial_damping: 1e-3,
            step_tolerance: 1e-8,
            residual_tolerance: 1e-10,
        }
    }
}

/// A fitted form with its fit-quality measures.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub form: ModelForm,
    pub r_squared: f64,
    pub rms: f64,
    pub iterations: usize,
    /// True when the solver met a tolerance before the iteration budget ran
    /// out (or could no longer improve the residual at all).
    pub converged: bool,
}

/// Coefficient of determination, `1 − SS_res / SS_tot`.
///
/// At most 1; negative when the fit is worse than predicting the mean.
/// Undefined (and an error) when all actual values are identical.
pub fn r_squared(actual: &[f64], predicted: &[f64]) -> Result<f64, RegressionError> {
    if actual.len() != predicted.len() {
        return Err(RegressionError::LengthMismatch {
            actual: actual.len(),
            predicted: predicted.len(),
        });
    }
    if actual.is_empty() {
        return Err(RegressionError::EmptyData);
    }
    let n = actual.len() as f64;
    let mean = actual.iter().sum::<f64>() / n;
    let ss_tot: f64 = actual.iter().map(|a| (a - mean).powi(2)).sum();
    if ss_tot == 0.0 {
        return Err(RegressionError::ZeroVariance);
    }
    let ss_res: f64 = actual
        .iter()
        .zip(predicted)
        .map(|(a, p)| (a - p).powi(2))
        .sum();
    Ok(1.0 - ss_res / ss_tot)
}

/// Root mean square of the residuals.
pub fn rms(actual: &[f64], predicted: &[f64]) -> Result<f64, RegressionError> {
    if actual.len() != predicted.len() {
        return Err(RegressionError::LengthMismatch {
            actual: actual.len(),
            predicted: predicted.len(),
        });
    }
    if actual.is_empty() {
        return Err(RegressionError::EmptyData);
    }
    let ss: f64 = actual
        .iter()
        .zip(predicted)
        .map(|(a, p)| (a - p).powi(2))
        .sum();
    Ok((ss / actual.len() as f64).sqrt())
}

/// Fits one model kind to (size, effort) data.
///
/// Needs at least as many points as the kind has parameters, nonnegative
/// sizes, and positive efforts. Returns a flagged (not failed) result if
/// the iteration budget runs out before a tolerance is met.
pub fn fit(
    kind: ModelKind,
    data: &[(f64, f64)],
    options: &FitOptions,
) -> Result<FitResult, RegressionError> {
    let needed = kind.param_count();
    if data.len() < needed {
        return Err(RegressionError::InsufficientData {
            kind,
            needed,
            got: data.len(),
        });
    }
    for (index, &(x, y)) in data.iter().enumerate() {
        if !(x >= 0.0) {
            return Err(RegressionError::NegativeSize { index, value: x });
        }
        if !(y > 0.0) || !y.is_finite() {
            return Err(RegressionError::NonPositiveEffort { index, value: y });
        }
    }

    let outcome = match kind {
        ModelKind::Exp2 => {
            let mut best: Option<LmOutcome> = None;
            let mut first_err = None;
            for start in exp2_starts(data) {
                match levenberg_marquardt(kind, data, start, options) {
                    Ok(candidate) => {
                        let better = match &best {
                            Some(current) => candidate.cost < current.cost,
                            None => true,
                        };
                        if better {
                            best = Some(candidate);
                        }
                    }
                    Err(err) => {
                        if first_err.is_none() {
                            first_err = Some(err);
                        }
                    }
                }
            }
            match best {
                Some(outcome) => outcome,
                None => return Err(first_err.expect("at least one start was attempted")),
            }
        }
        _ => levenberg_marquardt(kind, data, initial_guess(kind, data), options)?,
    };

    let mut params = outcome.params;
    if kind == ModelKind::Exp2 && params[1] < params[3] {
        // Canonical order: the faster-growing exponential comes first.
        params.swap(0, 2);
        params.swap(1, 3);
    }

    let form = ModelForm::new(kind, params)?;
    let actual: Vec<f64> = data.iter().map(|&(_, y)| y).collect();
    let predicted: Vec<f64> = data.iter().map(|&(x, _)| form.eval_raw(x)).collect();
    Ok(FitResult {
        r_squared: r_squared(&actual, &predicted)?,
        rms: rms(&actual, &predicted)?,
        iterations: outcome.iterations,
        converged: outcome.converged,
        form,
    })
}

struct LmOutcome {
    params: Vec<f64>,
    cost: f64,
    iterations: usize,
    converged: bool,
}

/// Residual sum of squares; infinite when any residual is non-finite so
/// that comparisons reject the step.
fn cost_at(kind: ModelKind, data: &[(f64, f64)], params: &[f64]) -> f64 {
    let mut cost = 0.0;
    for &(x, y) in data {
        let r = eval_kind(kind, params, x) - y;
        if !r.is_finite() {
            return f64::INFINITY;
        }
        cost += r * r;
    }
    cost
}

fn levenberg_marquardt(
    kind: ModelKind,
    data: &[(f64, f64)],
    start: Vec<f64>,
    options: &FitOptions,
) -> Result<LmOutcome, RegressionError> {
    let k = kind.param_count();
    let n = data.len();
    let mut params = start;
    let mut cost = cost_at(kind, data, &params);
    let mut lambda = options.initial_damping;
    let mut converged = false;
    let mut iterations = 0;

    for _ in 0..options.max_iterations {
        iterations += 1;
        let mut jac = DMatrix::zeros(n, k);
        let mut residuals = DVector::zeros(n);
        for (i, &(x, y)) in data.iter().enumerate() {
            residuals[i] = eval_kind(kind, &params, x) - y;
            let row = jacobian_row(kind, &params, x);
            for (j, value) in row.into_iter().enumerate() {
                jac[(i, j)] = value;
            }
        }
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let rhs = -(&jt * &residuals);

        let mut accepted = false;
        let mut solved_once = false;
        for _ in 0..40 {
            let damped = &jtj + DMatrix::identity(k, k) * lambda;
            let delta = match damped.lu().solve(&rhs) {
                Some(delta) if delta.iter().all(|d| d.is_finite()) => delta,
                _ => {
                    lambda *= 10.0;
                    continue;
                }
            };
            solved_once = true;
            let trial: Vec<f64> = params
                .iter()
                .zip(delta.iter())
                .map(|(p, d)| p + d)
                .collect();
            let trial_cost = cost_at(kind, data, &trial);
            if trial_cost.is_finite() && trial_cost <= cost {
                let rel_step = delta
                    .iter()
                    .zip(&trial)
                    .map(|(d, p)| d.abs() / p.abs().max(1.0))
                    .fold(0.0f64, f64::max);
                let rel_decrease = (cost - trial_cost) / cost.max(f64::MIN_POSITIVE);
                params = trial;
                cost = trial_cost;
                lambda = (lambda / 10.0).max(1e-15);
                accepted = true;
                if rel_step < options.step_tolerance || rel_decrease < options.residual_tolerance
                {
                    converged = true;
                }
                break;
            }
            lambda *= 10.0;
        }

        if !accepted {
            if !solved_once {
                return Err(RegressionError::SingularJacobian);
            }
            // No damped step improves the residual: already at a minimum.
            converged = true;
            break;
        }
        if converged {
            break;
        }
    }

    Ok(LmOutcome {
        params,
        cost,
        iterations,
        converged,
    })
}

/// Least squares via normal equations; `None` when the system is singular.
fn linear_least_squares(design: &DMatrix<f64>, target: &DVector<f64>) -> Option<DVector<f64>> {
    let xt = design.transpose();
    let xtx = &xt * design;
    let xty = &xt * target;
    let solution = xtx.lu().solve(&xty)?;
    solution.iter().all(|v| v.is_finite()).then_some(solution)
}

/// Deterministic starting parameters per kind. Exp2 uses
/// [`exp2_starts`] instead.
fn initial_guess(kind: ModelKind, data: &[(f64, f64)]) -> Vec<f64> {
    match kind {
        ModelKind::Polynomial => init_polynomial(data),
        ModelKind::Exp1 => init_exp1(data),
        ModelKind::Exp3 => init_exp3(data),
        ModelKind::Exp2 => exp2_starts(data)
            .into_iter()
            .next()
            .expect("exp2 always has starts"),
    }
}

fn init_polynomial(data: &[(f64, f64)]) -> Vec<f64> {
    let n = data.len();
    let design = DMatrix::from_fn(n, 3, |i, j| {
        let x = data[i].0;
        match j {
            0 => x * x,
            1 => x,
            _ => 1.0,
        }
    });
    let target = DVector::from_iterator(n, data.iter().map(|&(_, y)| y));
    match linear_least_squares(&design, &target) {
        Some(beta) => beta.iter().copied().collect(),
        None => {
            let mean = data.iter().map(|&(_, y)| y).sum::<f64>() / n as f64;
            vec![0.0, 0.0, mean]
        }
    }
}

fn init_exp3(data: &[(f64, f64)]) -> Vec<f64> {
    let n = data.len();
    // Efforts are positive, so ln y is always defined.
    let design = DMatrix::from_fn(n, 2, |i, j| if j == 0 { 1.0 } else { data[i].0 });
    let target = DVector::from_iterator(n, data.iter().map(|&(_, y)| y.ln()));
    match linear_least_squares(&design, &target) {
        Some(beta) => beta.iter().copied().collect(),
        None => {
            let mean = data.iter().map(|&(_, y)| y).sum::<f64>() / n as f64;
            vec![mean.max(f64::MIN_POSITIVE).ln(), 0.0]
        }
    }
}

fn init_exp1(data: &[(f64, f64)]) -> Vec<f64> {
    let n = data.len();
    let y_min = data.iter().map(|&(_, y)| y).fold(f64::INFINITY, f64::min);
    let y_max = data.iter().map(|&(_, y)| y).fold(f64::NEG_INFINITY, f64::max);
    // Shift above the minimum so the log of the detrended data exists; the
    // slope of that log estimates the rate c.
    let shift = 1e-6 * (y_max - y_min + 1.0);
    let design = DMatrix::from_fn(n, 2, |i, j| if j == 0 { 1.0 } else { data[i].0 });
    let detrended = DVector::from_iterator(n, data.iter().map(|&(_, y)| (y - y_min + shift).ln()));
    let mut c = match linear_least_squares(&design, &detrended) {
        Some(beta) => beta[1],
        None => 1e-3,
    };
    if c == 0.0 {
        c = 1e-3;
    }
    // With c fixed, (a, b) solve linearly.
    let design_ab = DMatrix::from_fn(n, 2, |i, j| {
        if j == 0 {
            1.0
        } else {
            (c * data[i].0).exp()
        }
    });
    let target = DVector::from_iterator(n, data.iter().map(|&(_, y)| y));
    match linear_least_squares(&design_ab, &target) {
        Some(beta) => vec![beta[0], beta[1], c],
        None => vec![y_min, 1.0, c],
    }
}

/// The five deterministic exp2 starts: the exp3 solution carried into the
/// first pair, with the second pair seeded at small positive, small
/// negative, and moderate amplitudes with the opposite rate, plus two
/// split-amplitude starts.
fn exp2_starts(data: &[(f64, f64)]) -> Vec<Vec<f64>> {
    let exp3 = init_exp3(data);
    let amplitude = exp3[0].exp();
    let rate = exp3[1];
    let mean_abs = data.iter().map(|&(_, y)| y.abs()).sum::<f64>() / data.len() as f64;
    vec![
        vec![amplitude, rate, 1e-3 * mean_abs, -rate],
        vec![amplitude, rate, -1e-3 * mean_abs, -rate],
        vec![amplitude, rate, 1e-1 * mean_abs, -rate],
        vec![0.5 * amplitude, rate, 0.5 * amplitude, 0.5 * rate],
        vec![0.5 * amplitude, rate, 0.5 * amplitude, -rate],
    ]
}
