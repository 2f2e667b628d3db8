//! Command implementations and report printing.
//!
//! Contract shared by every command: the report goes to stdout, warnings
//! and diagnostics go to stderr, and values that downstream tooling may
//! parse (sizes, efforts) are printed with `{}` so they round-trip
//! bit-exactly.

use std::fs;
use std::path::Path;

use ucpoint_core::dataset::{
    generate_synthetic, load_dataset, load_estimator, save_estimator, write_dataset, ProjectRecord,
};
use ucpoint_core::metrics::{evaluate, EvaluationReport};
use ucpoint_core::parser::{parse_project, ParseOutput};
use ucpoint_core::regression::fit::{fit, FitOptions, FitResult};
use ucpoint_core::regression::piecewise::{fit_piecewise, PiecewiseEstimator, PiecewiseOptions};
use ucpoint_core::regression::{segment, ModelKind, SizeRange};
use ucpoint_core::sizing::{legacy_effort, legacy_ucp, legacy_uucp, proposed_size, SizeBreakdown};
use ucpoint_core::ProjectSpec;

use crate::plot;
use crate::Command;

/// Fits below this R^2 are flagged as poor.
const R_SQUARED_ACCEPTABLE: f64 = 0.5;

const SIGN_NOTE: &str =
    "note: error sign convention: error = estimated - actual; a negative mean error means underestimation.";
const R2_NOTE: &str = "note: R^2 at or above 0.5 is considered acceptable for fitted curves.";

pub enum CmdError {
    Usage(String),
    Input(String),
    Compute(String),
}

impl CmdError {
    pub fn code(&self) -> i32 {
        match self {
            CmdError::Usage(_) => 1,
            CmdError::Input(_) => 2,
            CmdError::Compute(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CmdError::Usage(m) | CmdError::Input(m) | CmdError::Compute(m) => m,
        }
    }
}

pub fn dispatch(command: Command) -> Result<(), CmdError> {
    match command {
        Command::Size { project_file } => cmd_size(&project_file),
        Command::Fit {
            dataset,
            range,
            form,
            all_forms,
            out,
        } => cmd_fit(&dataset, range, form, all_forms, out.as_deref()),
        Command::Estimate {
            project_file,
            model,
            baseline,
        } => cmd_estimate(&project_file, model.as_deref(), baseline.as_deref()),
        Command::Evaluate {
            dataset,
            model,
            baseline,
            plot,
        } => cmd_evaluate(&dataset, model.as_deref(), baseline.as_deref(), plot.as_deref()),
        Command::Generate {
            out,
            seed,
            counts,
            noise,
        } => cmd_generate(&out, seed, counts, noise),
    }
}

/// Reads and parses a scenario file, sending diagnostics to stderr.
fn read_project(path: &Path) -> Result<ParseOutput, CmdError> {
    let source = fs::read_to_string(path)
        .map_err(|err| CmdError::Input(format!("cannot read {}: {err}", path.display())))?;
    match parse_project(&source) {
        Ok(output) => {
            for warning in &output.warnings {
                eprintln!("{}: {warning}", path.display());
            }
            Ok(output)
        }
        Err(failure) => {
            for diagnostic in &failure.diagnostics {
                eprintln!("{}: {diagnostic}", path.display());
            }
            Err(CmdError::Input(format!("{}: {failure}", path.display())))
        }
    }
}

/// Loads a dataset, sending row diagnostics to stderr.
fn read_dataset(path: &Path) -> Result<Vec<ProjectRecord>, CmdError> {
    match load_dataset(path) {
        Ok(load) => {
            for diagnostic in &load.diagnostics {
                eprintln!("{}: {diagnostic}", path.display());
            }
            Ok(load.records)
        }
        Err(err) => {
            if let ucpoint_core::dataset::DatasetError::NoValidRows { diagnostics } = &err {
                for diagnostic in diagnostics {
                    eprintln!("{}: {diagnostic}", path.display());
                }
            }
            Err(CmdError::Input(format!("{}: {err}", path.display())))
        }
    }
}

fn sized_breakdown(spec: &ProjectSpec) -> SizeBreakdown {
    let breakdown = proposed_size(spec);
    for warning in &breakdown.warnings {
        eprintln!("warning: {warning}");
    }
    breakdown
}

fn cmd_size(project_file: &Path) -> Result<(), CmdError> {
    let output = read_project(project_file)?;
    let spec = &output.spec;
    if spec.use_cases().is_empty() {
        eprintln!("warning: project has no use cases; size is 0");
    }
    let breakdown = sized_breakdown(spec);

    println!("project: {}", spec.name());
    println!("use cases:");
    let name_width = breakdown
        .per_use_case
        .iter()
        .map(|u| u.name.len())
        .max()
        .unwrap_or(4)
        .max(4);
    println!(
        "  {:<name_width$}  {:<8}  {:>4}  {:>4}  {:>12}  {:<5}  {:>6}",
        "name", "kind", "T_S", "T_E", "transactions", "class", "weight"
    );
    for (uc, sized) in spec.use_cases().iter().zip(&breakdown.per_use_case) {
        println!(
            "  {:<name_width$}  {:<8}  {:>4}  {:>4}  {:>12}  {:<5}  {:>6}",
            sized.name,
            sized.kind,
            uc.main_steps(),
            uc.extension_steps(),
            sized.transactions,
            sized.class.label(),
            sized.weight
        );
    }
    println!("proposed size (use case points): {}", breakdown.total_size);
    let uucp = legacy_uucp(spec);
    let ucp = legacy_ucp(spec);
    println!("legacy UUCP: {uucp}");
    println!("legacy UCP (adjustment {}): {ucp}", spec.legacy_adjustment());
    let effort = legacy_effort(ucp).map_err(|err| CmdError::Input(err.to_string()))?;
    println!("legacy effort (person-hours): {effort}");
    Ok(())
}

fn fit_row(range_label: &str, n: usize, result: &FitResult) {
    let params: Vec<String> = result
        .form
        .params()
        .iter()
        .map(|p| format!("{p:.6e}"))
        .collect();
    println!(
        "{:<7}  {:<28}  {:>3}  {:<52}  {:>9.6}  {:>12.3}",
        range_label,
        result.form.kind().formula(),
        n,
        params.join(", "),
        result.r_squared,
        result.rms
    );
}

fn fit_table_header() {
    println!(
        "{:<7}  {:<28}  {:>3}  {:<52}  {:>9}  {:>12}",
        "range", "form", "n", "params", "R^2", "RMS"
    );
}

fn warn_poor_fit(range_label: &str, result: &FitResult) {
    if result.r_squared < R_SQUARED_ACCEPTABLE {
        eprintln!(
            "warning: {range_label} fit R^2 {:.6} is below the {R_SQUARED_ACCEPTABLE} acceptability threshold",
            result.r_squared
        );
    }
    if !result.converged {
        eprintln!(
            "warning: {range_label} fit did not converge within the iteration budget ({} iterations used)",
            result.iterations
        );
    }
}

fn cmd_fit(
    dataset: &Path,
    range: Option<SizeRange>,
    form: Option<ModelKind>,
    all_forms: bool,
    out: Option<&Path>,
) -> Result<(), CmdError> {
    let records = read_dataset(dataset)?;
    let pairs: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.size_ucp.expect("loaded records carry a size"), r.actual_effort_ph))
        .collect();
    let counts = |r: SizeRange| pairs.iter().filter(|p| segment(p.0) == r).count();
    println!(
        "fitted {}: {} records (Small {}, Medium {}, Large {})",
        dataset.display(),
        pairs.len(),
        counts(SizeRange::Small),
        counts(SizeRange::Medium),
        counts(SizeRange::Large)
    );

    let options = FitOptions::default();
    if let Some(range) = range {
        let subset: Vec<(f64, f64)> = pairs
            .iter()
            .copied()
            .filter(|p| segment(p.0) == range)
            .collect();
        if all_forms {
            print_comparison(range, &subset, &options)?;
        } else {
            let kind = form.unwrap_or_else(|| range.default_kind());
            let result = fit(kind, &subset, &options)
                .map_err(|err| CmdError::Compute(format!("{range} range: {err}")))?;
            fit_table_header();
            fit_row(range.as_str(), subset.len(), &result);
            warn_poor_fit(range.as_str(), &result);
        }
        println!("{R2_NOTE}");
        return Ok(());
    }

    let mut piecewise_options = PiecewiseOptions::new(
        dataset.display().to_string(),
        chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string(),
    );
    piecewise_options.all_forms = all_forms;
    let fitted = fit_piecewise(&pairs, &piecewise_options)
        .map_err(|err| CmdError::Compute(err.to_string()))?;

    fit_table_header();
    for range in SizeRange::ALL {
        let result = fitted.estimator.fit_for(range);
        fit_row(range.as_str(), counts(range), result);
        warn_poor_fit(range.as_str(), result);
    }

    if let Some(comparisons) = &fitted.comparisons {
        for comparison in comparisons {
            println!();
            println!("{} range, all forms (best R^2 first):", comparison.range);
            for result in &comparison.fits {
                fit_row("", counts(comparison.range), result);
            }
            for (kind, err) in &comparison.failures {
                println!("  {kind}: failed: {err}");
            }
        }
    }
    println!("{R2_NOTE}");

    if let Some(out) = out {
        save_estimator(&fitted.estimator, out)
            .map_err(|err| CmdError::Input(err.to_string()))?;
        println!("model written to {}", out.display());
    }
    Ok(())
}

fn print_comparison(
    range: SizeRange,
    subset: &[(f64, f64)],
    options: &FitOptions,
) -> Result<(), CmdError> {
    println!("{range} range, all forms (best R^2 first):");
    fit_table_header();
    let mut fitted = Vec::new();
    for kind in ModelKind::ALL {
        match fit(kind, subset, options) {
            Ok(result) => fitted.push(result),
            Err(err) => println!("  {kind}: failed: {err}"),
        }
    }
    if fitted.is_empty() {
        return Err(CmdError::Compute(format!(
            "{range} range: no form could be fitted"
        )));
    }
    fitted.sort_by(|a, b| b.r_squared.total_cmp(&a.r_squared));
    for result in &fitted {
        fit_row(range.as_str(), subset.len(), result);
    }
    Ok(())
}

fn cmd_estimate(
    project_file: &Path,
    model: Option<&Path>,
    baseline: Option<&str>,
) -> Result<(), CmdError> {
    if model.is_none() && baseline.is_none() {
        return Err(CmdError::Usage(
            "exactly one of --model or --baseline is required".to_string(),
        ));
    }
    let output = read_project(project_file)?;
    let spec = &output.spec;

    if baseline.is_some() {
        let uucp = legacy_uucp(spec);
        let ucp = legacy_ucp(spec);
        let effort = legacy_effort(ucp).map_err(|err| CmdError::Input(err.to_string()))?;
        println!("project: {}", spec.name());
        println!("legacy UUCP: {uucp}");
        println!("legacy UCP (adjustment {}): {ucp}", spec.legacy_adjustment());
        println!("baseline effort (person-hours): {effort}");
        return Ok(());
    }

    let model_path = model.expect("checked above");
    let estimator = load_estimator(model_path)
        .map_err(|err| CmdError::Input(err.to_string()))?;
    let breakdown = sized_breakdown(spec);
    let prediction = estimator
        .predict(breakdown.total_size, spec.complexity_level(), spec.productivity())
        .map_err(|err| CmdError::Compute(err.to_string()))?;
    if prediction.clamped {
        eprintln!(
            "warning: curve predicted a negative effort ({}); clamped to 0",
            prediction.raw_curve
        );
    }
    let fit_result = estimator.fit_for(prediction.range);
    println!("project: {}", spec.name());
    println!("proposed size (use case points): {}", prediction.size);
    println!("size range: {}", prediction.range);
    println!(
        "model: {} ({})",
        fit_result.form.kind(),
        fit_result.form.kind().formula()
    );
    println!("raw curve effort (person-hours): {}", prediction.raw_curve);
    println!(
        "complexity level: {} (weight {})",
        prediction.factors.complexity_level, prediction.factors.complexity_weight
    );
    println!(
        "productivity: sum {}, value {}",
        prediction.factors.productivity_sum, prediction.factors.productivity_value
    );
    println!("adjusted effort (person-hours): {}", prediction.effort);
    Ok(())
}

/// Estimate efforts for each record under one estimator.
fn record_estimates(
    records: &[ProjectRecord],
    estimator: Option<&PiecewiseEstimator>,
) -> Result<Vec<(f64, f64, SizeRange)>, CmdError> {
    records
        .iter()
        .map(|record| {
            let size = record.size_ucp.expect("loaded records carry a size");
            let estimate = match estimator {
                Some(est) => est
                    .predict(size, record.complexity_level, &record.ratings)
                    .map_err(|err| {
                        CmdError::Compute(format!("record {}: {err}", record.project_id))
                    })?
                    .effort,
                None => ucpoint_core::sizing::LEGACY_EFFORT_RATE * size,
            };
            Ok((record.actual_effort_ph, estimate, segment(size)))
        })
        .collect()
}

struct GridColumn {
    label: &'static str,
    n: usize,
    report: Option<EvaluationReport>,
}

fn grid_columns(label_prefix: &str, rows: &[(f64, f64, SizeRange)]) -> Vec<GridColumn> {
    let filters: [(&'static str, Option<SizeRange>); 4] = [
        ("All", None),
        ("Small", Some(SizeRange::Small)),
        ("Medium", Some(SizeRange::Medium)),
        ("Large", Some(SizeRange::Large)),
    ];
    filters
        .into_iter()
        .map(|(label, filter)| {
            let pairs: Vec<(f64, f64)> = rows
                .iter()
                .filter(|(_, _, range)| filter.is_none_or(|f| f == *range))
                .map(|&(actual, estimate, _)| (actual, estimate))
                .collect();
            let n = pairs.len();
            let report = if n >= 2 {
                match evaluate(&pairs) {
                    Ok(report) => Some(report),
                    Err(err) => {
                        eprintln!("warning: {label_prefix}: {label} column skipped: {err}");
                        None
                    }
                }
            } else {
                None
            };
            GridColumn { label, n, report }
        })
        .collect()
}

fn print_grid(columns: &[GridColumn]) {
    let cell = |value: Option<String>| value.unwrap_or_else(|| "n/a".to_string());
    print!("  {:<16}", "criterion");
    for column in columns {
        print!("  {:>10}", column.label);
    }
    println!();
    print!("  {:<16}", "n");
    for column in columns {
        print!("  {:>10}", column.n);
    }
    println!();

    type RowFn = fn(&EvaluationReport) -> String;
    let rows: [(&str, RowFn); 8] = [
        ("MMRE", |r| format!("{:.4}", r.mmre)),
        ("MMER", |r| format!("{:.4}", r.mmer)),
        ("PRED(25)", |r| format!("{:.1}", r.pred25)),
        ("PRED(50)", |r| format!("{:.1}", r.pred50)),
        ("PRED(75)", |r| format!("{:.1}", r.pred75)),
        ("PRED(100)", |r| format!("{:.1}", r.pred100)),
        ("mean error", |r| format!("{:.1}", r.mean_error)),
        ("CI(95%) margin", |r| format!("{:.1}", r.ci_margin)),
    ];
    for (label, project) in rows {
        print!("  {label:<16}");
        for column in columns {
            print!("  {:>10}", cell(column.report.as_ref().map(project)));
        }
        println!();
    }
}

fn cmd_evaluate(
    dataset: &Path,
    model: Option<&Path>,
    baseline: Option<&str>,
    plot_out: Option<&Path>,
) -> Result<(), CmdError> {
    if model.is_none() && baseline.is_none() {
        return Err(CmdError::Usage(
            "at least one of --model or --baseline is required".to_string(),
        ));
    }
    let records = read_dataset(dataset)?;
    println!("evaluating {}: {} records", dataset.display(), records.len());

    let estimator = match model {
        Some(path) => Some(
            load_estimator(path).map_err(|err| CmdError::Input(err.to_string()))?,
        ),
        None => None,
    };

    let mut blocks: Vec<(String, Vec<(f64, f64, SizeRange)>)> = Vec::new();
    if let (Some(est), Some(path)) = (&estimator, model) {
        let label = format!("piecewise model ({})", path.display());
        let rows = record_estimates(&records, Some(est))?;
        blocks.push((label, rows));
    }
    if baseline.is_some() {
        let label = "baseline (20 x size)".to_string();
        let rows = record_estimates(&records, None)?;
        blocks.push((label, rows));
    }

    for (label, rows) in &blocks {
        println!();
        println!("estimator: {label}");
        let columns = grid_columns(label, rows);
        print_grid(&columns);
    }
    println!();
    println!("{SIGN_NOTE}");
    println!("{R2_NOTE}");

    if let Some(plot_path) = plot_out {
        let points: Vec<(f64, f64)> = records
            .iter()
            .map(|r| (r.size_ucp.expect("loaded records carry a size"), r.actual_effort_ph))
            .collect();
        let max_size = points.iter().map(|p| p.0).fold(0.0, f64::max).max(1.0);
        let mut curves = Vec::new();
        if let Some(est) = &estimator {
            curves.push(plot::model_curve(est, max_size, "piecewise model"));
        }
        if baseline.is_some() {
            curves.push(plot::baseline_curve(max_size, "baseline 20 x size"));
        }
        let svg = plot::scatter_svg(&points, &curves);
        fs::write(plot_path, svg)
            .map_err(|err| CmdError::Input(format!("cannot write {}: {err}", plot_path.display())))?;
        println!("plot written to {}", plot_path.display());
    }
    Ok(())
}

fn cmd_generate(
    out: &Path,
    seed: u64,
    counts: (usize, usize, usize),
    noise: f64,
) -> Result<(), CmdError> {
    let records = generate_synthetic(seed, counts, noise);
    write_dataset(&records, out).map_err(|err| CmdError::Input(err.to_string()))?;
    println!(
        "wrote {} ({} records, seed {seed}, noise {noise})",
        out.display(),
        records.len()
    );
    Ok(())
}
