//! Python bindings for the core estimation library.
//!
//! Builds as a cdylib named `ucpoint`. Copy the built shared object next
//! to your script as `ucpoint.so` (see `python/smoke_test.py`) or install
//! it with any PEP 517 builder that understands cdylib crates, then:
//!
//! ```python
//! import ucpoint
//! project = ucpoint.parse_project(open("spec.ucp.txt").read())
//! print(project.proposed_size())
//! ```

use std::path::PathBuf;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ucpoint_core::adjustment::{self, ProductivityRatings, Rating};
use ucpoint_core::dataset;
use ucpoint_core::metrics;
use ucpoint_core::model::{ComplexityLevel, ProjectSpec};
use ucpoint_core::parser;
use ucpoint_core::regression::piecewise::{fit_piecewise, PiecewiseEstimator, PiecewiseOptions};
use ucpoint_core::regression::SizeRange;
use ucpoint_core::sizing;

fn value_err(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn io_err(err: impl std::fmt::Display) -> PyErr {
    PyIOError::new_err(err.to_string())
}

fn level_from(level: u8) -> PyResult<ComplexityLevel> {
    ComplexityLevel::new(level).map_err(value_err)
}

fn ratings_from(values: (u8, u8, u8, u8, u8)) -> PyResult<ProductivityRatings> {
    let (domain, motivation, language, oo, analytical) = values;
    let rating = |v: u8| Rating::new(v).map_err(value_err);
    Ok(ProductivityRatings::new(
        rating(domain)?,
        rating(motivation)?,
        rating(language)?,
        rating(oo)?,
        rating(analytical)?,
    ))
}

/// A parsed use-case scenario.
#[pyclass]
struct Project {
    spec: ProjectSpec,
    warnings: Vec<String>,
}

#[pymethods]
impl Project {
    #[getter]
    fn name(&self) -> &str {
        self.spec.name()
    }

    #[getter]
    fn use_case_count(&self) -> usize {
        self.spec.use_cases().len()
    }

    #[getter]
    fn actor_count(&self) -> usize {
        self.spec.actors().len()
    }

    #[getter]
    fn complexity_level(&self) -> u8 {
        self.spec.complexity_level().get()
    }

    /// Non-fatal parse diagnostics, one string per warning.
    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.warnings.clone()
    }

    fn proposed_size(&self) -> f64 {
        sizing::proposed_size(&self.spec).total_size
    }

    fn legacy_uucp(&self) -> f64 {
        sizing::legacy_uucp(&self.spec)
    }

    fn legacy_ucp(&self) -> f64 {
        sizing::legacy_ucp(&self.spec)
    }

    /// Flat-rate effort from legacy UCP, in person-hours.
    fn baseline_effort(&self) -> PyResult<f64> {
        sizing::legacy_effort(sizing::legacy_ucp(&self.spec)).map_err(value_err)
    }

    /// Canonical scenario text for this project.
    fn serialize(&self) -> String {
        parser::serialize_project(&self.spec)
    }

    fn __repr__(&self) -> String {
        format!(
            "Project(name={:?}, use_cases={}, size={})",
            self.spec.name(),
            self.spec.use_cases().len(),
            sizing::proposed_size(&self.spec).total_size
        )
    }
}

/// A fitted piecewise effort estimator.
#[pyclass]
struct Estimator {
    inner: PiecewiseEstimator,
}

#[pymethods]
impl Estimator {
    /// Fits one curve per size range to `(size, effort)` points.
    #[staticmethod]
    #[pyo3(signature = (points, source = "python"))]
    fn fit(points: Vec<(f64, f64)>, source: &str) -> PyResult<Self> {
        let options = PiecewiseOptions::new(source, "n/a");
        let fitted = fit_piecewise(&points, &options).map_err(value_err)?;
        Ok(Estimator {
            inner: fitted.estimator,
        })
    }

    /// Adjusted effort in person-hours for one project size.
    #[pyo3(signature = (size, complexity_level = 3, ratings = (3, 3, 3, 3, 3)))]
    fn predict(&self, size: f64, complexity_level: u8, ratings: (u8, u8, u8, u8, u8)) -> PyResult<f64> {
        let prediction = self
            .inner
            .predict(size, level_from(complexity_level)?, &ratings_from(ratings)?)
            .map_err(value_err)?;
        Ok(prediction.effort)
    }

    /// Like `predict` but returns the intermediate values as a dict.
    #[pyo3(signature = (size, complexity_level = 3, ratings = (3, 3, 3, 3, 3)))]
    fn predict_detail<'py>(
        &self,
        py: Python<'py>,
        size: f64,
        complexity_level: u8,
        ratings: (u8, u8, u8, u8, u8),
    ) -> PyResult<Bound<'py, PyDict>> {
        let prediction = self
            .inner
            .predict(size, level_from(complexity_level)?, &ratings_from(ratings)?)
            .map_err(value_err)?;
        let dict = PyDict::new(py);
        dict.set_item("size", prediction.size)?;
        dict.set_item("range", prediction.range.as_str())?;
        dict.set_item("raw_curve", prediction.raw_curve)?;
        dict.set_item("clamped", prediction.clamped)?;
        dict.set_item("complexity_weight", prediction.factors.complexity_weight)?;
        dict.set_item("productivity_value", prediction.factors.productivity_value)?;
        dict.set_item("effort", prediction.effort)?;
        Ok(dict)
    }

    /// Per-range curve kind, parameters, and fit quality.
    fn describe<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let dict = PyDict::new(py);
        for range in SizeRange::ALL {
            let fit = self.inner.fit_for(range);
            let entry = PyDict::new(py);
            entry.set_item("kind", fit.form.kind().as_str())?;
            entry.set_item("params", fit.form.params().to_vec())?;
            entry.set_item("r_squared", fit.r_squared)?;
            entry.set_item("rms", fit.rms)?;
            entry.set_item("converged", fit.converged)?;
            dict.set_item(range.as_str(), entry)?;
        }
        Ok(dict)
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        dataset::save_estimator(&self.inner, &path).map_err(io_err)
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(Estimator {
            inner: dataset::load_estimator(&path).map_err(io_err)?,
        })
    }

    fn __repr__(&self) -> String {
        let kinds: Vec<&str> = SizeRange::ALL
            .iter()
            .map(|&r| self.inner.fit_for(r).form.kind().as_str())
            .collect();
        format!("Estimator(small={}, medium={}, large={})", kinds[0], kinds[1], kinds[2])
    }
}

/// Parses scenario text into a `Project`. Raises `ValueError` with every
/// diagnostic when the text has fatal errors.
#[pyfunction]
fn parse_project(text: &str) -> PyResult<Project> {
    match parser::parse_project(text) {
        Ok(output) => Ok(Project {
            spec: output.spec,
            warnings: output.warnings.iter().map(|w| w.to_string()).collect(),
        }),
        Err(failure) => {
            let details: Vec<String> = failure.diagnostics.iter().map(|d| d.to_string()).collect();
            Err(value_err(format!("{failure}: {}", details.join("; "))))
        }
    }
}

/// Accuracy metrics over `(actual, estimated)` effort pairs.
#[pyfunction]
fn evaluate<'py>(py: Python<'py>, pairs: Vec<(f64, f64)>) -> PyResult<Bound<'py, PyDict>> {
    let report = metrics::evaluate(&pairs).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("n", report.n)?;
    dict.set_item("mmre", report.mmre)?;
    dict.set_item("mmer", report.mmer)?;
    dict.set_item("pred25", report.pred25)?;
    dict.set_item("pred50", report.pred50)?;
    dict.set_item("pred75", report.pred75)?;
    dict.set_item("pred100", report.pred100)?;
    dict.set_item("mean_error", report.mean_error)?;
    dict.set_item("ci_margin", report.ci_margin)?;
    Ok(dict)
}

/// Deterministic synthetic dataset as `(project_id, size, effort)` rows.
#[pyfunction]
#[pyo3(signature = (seed = 42, counts = (26, 21, 18), noise = 0.05))]
fn generate_synthetic(
    seed: u64,
    counts: (usize, usize, usize),
    noise: f64,
) -> PyResult<Vec<(String, f64, f64)>> {
    if !(0.0..=1.0).contains(&noise) {
        return Err(PyValueError::new_err(format!(
            "noise must be in [0, 1], got {noise}"
        )));
    }
    Ok(dataset::generate_synthetic(seed, counts, noise)
        .into_iter()
        .map(|r| (r.project_id, r.size_ucp.unwrap_or(0.0), r.actual_effort_ph))
        .collect())
}

/// Applies the complexity and productivity factors to a base effort.
#[pyfunction]
#[pyo3(signature = (base_effort, complexity_level = 3, ratings = (3, 3, 3, 3, 3)))]
fn adjusted_effort(
    base_effort: f64,
    complexity_level: u8,
    ratings: (u8, u8, u8, u8, u8),
) -> PyResult<f64> {
    Ok(adjustment::adjusted_effort(
        base_effort,
        level_from(complexity_level)?,
        &ratings_from(ratings)?,
    ))
}

#[pymodule]
fn ucpoint(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Project>()?;
    m.add_class::<Estimator>()?;
    m.add_function(wrap_pyfunction!(parse_project, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(generate_synthetic, m)?)?;
    m.add_function(wrap_pyfunction!(adjusted_effort, m)?)?;
    m.add("LEGACY_EFFORT_RATE", sizing::LEGACY_EFFORT_RATE)?;
    Ok(())
}
