//! Project sizing in use case points.
//!
//! [`proposed_size`] implements the transaction-weighted size: every use
//! case, regardless of kind, is classified on the six-class scale from its
//! transaction count and contributes that class weight. The legacy
//! functions implement the classic UCP count for comparison: only base use
//! cases and actors contribute, and effort follows a fixed rate per point.

use thiserror::Error;

use crate::model::{classify_legacy, classify_proposed, ActorKind, ComplexityClass, ProjectSpec, UseCaseKind};

/// Legacy actor weight for a simple actor (machine API).
pub const LEGACY_ACTOR_WEIGHT_SIMPLE: u32 = 1;
/// Legacy actor weight for an average actor (protocol or text interface).
pub const LEGACY_ACTOR_WEIGHT_AVERAGE: u32 = 2;
/// Legacy actor weight for a complex actor (interactive GUI user).
pub const LEGACY_ACTOR_WEIGHT_COMPLEX: u32 = 3;

/// Effort rate of the legacy baseline, in person-hours per use case point.
pub const LEGACY_EFFORT_RATE: f64 = 20.0;

pub fn legacy_actor_weight(kind: ActorKind) -> u32 {
    match kind {
        ActorKind::Simple => LEGACY_ACTOR_WEIGHT_SIMPLE,
        ActorKind::Average => LEGACY_ACTOR_WEIGHT_AVERAGE,
        ActorKind::Complex => LEGACY_ACTOR_WEIGHT_COMPLEX,
    }
}

/// Classification detail for one use case in a [`SizeBreakdown`].
#[derive(Debug, Clone, PartialEq)]
pub struct UseCaseSize {
    pub name: String,
    pub kind: UseCaseKind,
    pub transactions: f64,
    pub class: ComplexityClass,
    pub weight: u32,
}

/// Result of [`proposed_size`]: per-use-case classifications, the summed
/// size, and any warnings raised while classifying.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeBreakdown {
    pub per_use_case: Vec<UseCaseSize>,
    pub total_size: f64,
    pub warnings: Vec<String>,
}

/// Computes the transaction-weighted project size.
///
/// The total is the sum of the per-use-case class weights, so it is always
/// a nonnegative whole number and grows monotonically as use cases are
/// added. Use cases with fewer than one transaction classify as `VeryLow`
/// and produce a warning, since a scenario without steps usually means an
/// incomplete file rather than a genuinely empty use case.
pub fn proposed_size(spec: &ProjectSpec) -> SizeBreakdown {
    let mut per_use_case = Vec::with_capacity(spec.use_cases().len());
    let mut warnings = Vec::new();
    let mut total = 0u32;
    for uc in spec.use_cases() {
        let transactions = uc.total_transactions();
        if transactions < 1.0 {
            warnings.push(format!(
                "use case `{}` has fewer than one transaction; counted as VeryLow",
                uc.name()
            ));
        }
        let class = classify_proposed(transactions);
        let weight = class.weight();
        total += weight;
        per_use_case.push(UseCaseSize {
            name: uc.name().to_string(),
            kind: uc.kind(),
            transactions,
            class,
            weight,
        });
    }
    SizeBreakdown {
        per_use_case,
        total_size: f64::from(total),
        warnings,
    }
}

/// Legacy unadjusted use case points: base use cases weighted by the
/// three-class scale plus actors weighted 1/2/3. Include and extend use
/// cases do not contribute.
pub fn legacy_uucp(spec: &ProjectSpec) -> f64 {
    let use_case_points: u32 = spec
        .use_cases()
        .iter()
        .filter(|uc| uc.kind() == UseCaseKind::Base)
        .map(|uc| classify_legacy(uc).weight())
        .sum();
    let actor_points: u32 = spec
        .actors()
        .iter()
        .map(|a| legacy_actor_weight(a.kind()))
        .sum();
    f64::from(use_case_points + actor_points)
}

/// Legacy adjusted use case points: UUCP scaled by the project's
/// technical/environmental adjustment factor in `[0.7, 1.3]`.
pub fn legacy_ucp(spec: &ProjectSpec) -> f64 {
    legacy_uucp(spec) * spec.legacy_adjustment()
}

/// Legacy baseline effort in person-hours: a fixed 20 person-hours per
/// use case point.
pub fn legacy_effort(size_ucp: f64) -> Result<f64, SizingError> {
    if size_ucp < 0.0 || size_ucp.is_nan() {
        return Err(SizingError::NegativeSize(size_ucp));
    }
    Ok(LEGACY_EFFORT_RATE * size_ucp)
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SizingError {
    #[error("size must be nonnegative, got {0}")]
    NegativeSize(f64),
}
