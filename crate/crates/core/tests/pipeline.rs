//! End-to-end checks through the public API: parse fixture scenarios,
//! size them, fit an estimator on synthetic data, and predict.
//!
//! Fixture expectations below were tallied by hand from the scenario
//! files, independently of the sizing code.

use std::path::PathBuf;

use ucpoint_core::adjustment::productivity_sum;
use ucpoint_core::dataset::generate_synthetic;
use ucpoint_core::metrics::evaluate;
use ucpoint_core::model::ComplexityLevel;
use ucpoint_core::parser::{parse_project, serialize_project, ParseOutput};
use ucpoint_core::regression::piecewise::{fit_piecewise, PiecewiseOptions};
use ucpoint_core::sizing::{legacy_effort, legacy_ucp, legacy_uucp, proposed_size};
use ucpoint_core::{ComplexityClass, ProductivityRatings, SizeRange};

fn fixture(name: &str) -> ParseOutput {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    let source = std::fs::read_to_string(&path).unwrap();
    parse_project(&source).unwrap_or_else(|failure| {
        panic!(
            "{name} failed to parse: {:?}",
            failure.diagnostics
        )
    })
}

#[test]
fn atm_counts() {
    let out = fixture("atm.ucp.txt");
    assert!(out.warnings.is_empty(), "{:?}", out.warnings);
    let spec = &out.spec;
    assert_eq!(spec.name(), "ATM");
    assert_eq!(spec.use_cases().len(), 5);
    assert_eq!(spec.actors().len(), 3);

    let breakdown = proposed_size(spec);
    assert_eq!(breakdown.total_size, 40.0);
    let classes: Vec<ComplexityClass> = breakdown
        .per_use_case
        .iter()
        .map(|u| u.class)
        .collect();
    use ComplexityClass::*;
    assert_eq!(classes, [Low, Low, VeryLow, Low, VeryLow]);

    assert_eq!(legacy_uucp(spec), 46.0);
    assert_eq!(legacy_ucp(spec), 46.0);
    assert_eq!(legacy_effort(46.0).unwrap(), 920.0);
}

#[test]
fn library_counts() {
    let out = fixture("library.ucp.txt");
    assert!(out.warnings.is_empty(), "{:?}", out.warnings);
    let spec = &out.spec;
    assert_eq!(proposed_size(spec).total_size, 60.0);
    assert_eq!(legacy_uucp(spec), 48.0);
    let ucp = legacy_ucp(spec);
    assert!((ucp - 43.2).abs() < 1e-9, "ucp {ucp}");
    assert!((legacy_effort(ucp).unwrap() - 864.0).abs() < 1e-6);
    assert_eq!(spec.complexity_level().get(), 4);
}

#[test]
fn webshop_counts() {
    let out = fixture("webshop.ucp.txt");
    assert!(out.warnings.is_empty(), "{:?}", out.warnings);
    let spec = &out.spec;
    let breakdown = proposed_size(spec);
    assert_eq!(breakdown.total_size, 105.0);
    assert_eq!(breakdown.per_use_case[0].class, ComplexityClass::ExtraHigh);
    assert_eq!(legacy_uucp(spec), 62.0);
    // No legacy-adjustment header: defaults to 1.0.
    assert_eq!(spec.legacy_adjustment(), 1.0);
    assert_eq!(legacy_effort(legacy_ucp(spec)).unwrap(), 1240.0);
    assert_eq!(spec.complexity_level().get(), 5);
    assert_eq!(productivity_sum(spec.productivity()), 40);
}

#[test]
fn minimal_counts() {
    let out = fixture("minimal.ucp.txt");
    assert!(out.warnings.is_empty(), "{:?}", out.warnings);
    let spec = &out.spec;
    assert_eq!(proposed_size(spec).total_size, 20.0);
    assert_eq!(legacy_uucp(spec), 20.0);
    // Optional headers default: level 3, nominal ratings, adjustment 1.
    assert_eq!(spec.complexity_level(), ComplexityLevel::default());
    assert_eq!(*spec.productivity(), ProductivityRatings::default());
    assert_eq!(spec.legacy_adjustment(), 1.0);
}

#[test]
fn messy_parses_with_warnings_only() {
    let out = fixture("messy.ucp.txt");
    assert!(out.warnings.len() >= 3, "{:?}", out.warnings);
    let spec = &out.spec;
    // Duplicate header keeps the first value.
    assert_eq!(spec.complexity_level().get(), 2);
    assert_eq!(spec.productivity().domain_experience.get(), 4);
    assert_eq!(spec.productivity().motivation.get(), 2);
    assert_eq!(spec.productivity().language_experience.get(), 3);
    // The pre-section step counts toward main.
    assert_eq!(spec.use_cases()[0].main_steps(), 3);
    assert_eq!(spec.use_cases()[0].extension_steps(), 1);
    assert_eq!(proposed_size(spec).total_size, 10.0);
    assert_eq!(legacy_uucp(spec), 10.0);
}

#[test]
fn serialization_round_trips_every_fixture() {
    for name in [
        "atm.ucp.txt",
        "library.ucp.txt",
        "webshop.ucp.txt",
        "minimal.ucp.txt",
        "messy.ucp.txt",
    ] {
        let first = fixture(name);
        let canonical = serialize_project(&first.spec);
        let second = parse_project(&canonical)
            .unwrap_or_else(|f| panic!("{name} reparse failed: {:?}", f.diagnostics));
        assert!(second.warnings.is_empty(), "{name}: {:?}", second.warnings);
        assert_eq!(first.spec, second.spec, "{name}");
        // Canonical output is a fixed point.
        assert_eq!(canonical, serialize_project(&second.spec), "{name}");
    }
}

#[test]
fn fixtures_flow_through_a_fitted_estimator() {
    let dataset = generate_synthetic(42, (26, 21, 18), 0.05);
    let pairs: Vec<(f64, f64)> = dataset
        .iter()
        .map(|r| (r.size_ucp.unwrap(), r.actual_effort_ph))
        .collect();
    let fitted = fit_piecewise(
        &pairs,
        &PiecewiseOptions::new("synthetic-65", "2026-01-01T00:00:00Z"),
    )
    .unwrap();
    let estimator = fitted.estimator;

    // Every fixture gets a positive, finite estimate.
    for name in [
        "atm.ucp.txt",
        "library.ucp.txt",
        "webshop.ucp.txt",
        "minimal.ucp.txt",
        "messy.ucp.txt",
    ] {
        let out = fixture(name);
        let size = proposed_size(&out.spec).total_size;
        let prediction = estimator
            .predict(size, out.spec.complexity_level(), out.spec.productivity())
            .unwrap();
        assert!(
            prediction.effort.is_finite() && prediction.effort > 0.0,
            "{name}: {:?}",
            prediction
        );
    }

    // The webshop sits past the small/medium boundary.
    let webshop = fixture("webshop.ucp.txt");
    let size = proposed_size(&webshop.spec).total_size;
    let prediction = estimator
        .predict(size, ComplexityLevel::default(), &ProductivityRatings::default())
        .unwrap();
    assert_eq!(prediction.range, SizeRange::Medium);

    // On its own training data the estimator is tight.
    let scored: Vec<(f64, f64)> = pairs
        .iter()
        .map(|&(size, actual)| {
            let p = estimator
                .predict(size, ComplexityLevel::default(), &ProductivityRatings::default())
                .unwrap();
            (actual, p.effort)
        })
        .collect();
    let report = evaluate(&scored).unwrap();
    assert!(report.mmre < 0.1, "mmre {}", report.mmre);
    assert!(report.pred25 >= 95.0, "pred25 {}", report.pred25);
}
